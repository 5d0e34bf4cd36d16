mod common;

use std::path::Path;
use std::process::Command as Process;

use clap::Parser;
use clifford_hardy::cli::{execute, Cli, Outcome};
use clifford_hardy::format::{decode, decode_header, encode, read_field, write_field};
use clifford_hardy::transforms::hardy_project;
use clifford_hardy::{Error, FieldHeader, GridField, Side};
use num_complex::Complex64;
use proptest::prelude::*;

use common::c64;

fn run(args: &[&str]) -> clifford_hardy::Result<Outcome> {
    let argv = std::iter::once("hardy").chain(args.iter().copied());
    execute(&Cli::try_parse_from(argv).expect("arguments parse"))
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

fn value(stdout: &str, key: &str) -> String {
    stdout
        .lines()
        .find_map(|l| l.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("no {key} in {stdout}"))
        .to_string()
}

#[test]
fn gen_decompose_extend_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "f.cfld");
    let out = run(&["gen", "random-bandlimited", "--dims", "32,32", "--seed", "3", "--band", "6", "--out", &f]).unwrap();
    assert_eq!(value(&out.stdout, "points"), "1024");
    assert_eq!(value(&out.stdout, "blades"), "4");

    let plus = path(dir.path(), "plus.cfld");
    let minus = path(dir.path(), "minus.cfld");
    let csv = path(dir.path(), "parts.csv");
    let out = run(&["decompose", "--in", &f, "--out-plus", &plus, "--out-minus", &minus, "--csv", &csv]).unwrap();
    assert!(value(&out.stdout, "max_residual").parse::<f64>().unwrap() < 1e-13);
    assert!(dir.path().join("parts.csv.plus").exists());
    assert!(dir.path().join("parts.csv.minus").exists());
    let field = read_field(&f).unwrap();
    let p = read_field(&plus).unwrap();
    assert_eq!(p, hardy_project(Side::Plus, &field).unwrap());
    let sum = p.add(&read_field(&minus).unwrap()).unwrap();
    assert!(sum.relative_l2_error(&field).unwrap() < 1e-13);

    let a = path(dir.path(), "a.cfld");
    let b = path(dir.path(), "b.cfld");
    run(&["extend", "--in", &f, "--x0", "0.05", "--out", &a]).unwrap();
    run(&["extend", "--in", &plus, "--x0", "0.05", "--method", "poisson", "--out", &b]).unwrap();
    let (a, b) = (read_field(&a).unwrap(), read_field(&b).unwrap());
    assert!(a.relative_l2_error(&b).unwrap() < 1e-12);
    assert!(run(&["extend", "--in", &f, "--x0", "-1", "--out", &path(dir.path(), "c.cfld")]).is_err());
}

#[test]
fn hilbert_and_riesz_commands() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "f.cfld");
    run(&["gen", "plane-wave", "--n", "1", "--dims", "16", "--m", "-3", "--out", &f]).unwrap();
    let h = path(dir.path(), "h.cfld");
    let out = run(&["hilbert", "--in", &f, "--out", &h]).unwrap();
    assert!(out.stdout.contains("operator=hilbert"));
    let hh = path(dir.path(), "hh.cfld");
    run(&["hilbert", "--in", &h, "--out", &hh]).unwrap();
    let (f0, f2) = (read_field(&f).unwrap(), read_field(&hh).unwrap());
    assert!(f2.relative_l2_error(&f0).unwrap() < 1e-13);
    let r = path(dir.path(), "r.cfld");
    run(&["riesz", "--in", &f, "--axis", "1", "--out", &r]).unwrap();
    // R1 e^{2πiξx} = -i sgn(ξ) e^{2πiξx}, and ξ < 0 here
    let expected = f0.scale(Complex64::new(0.0, 1.0));
    assert!(read_field(&r).unwrap().relative_l2_error(&expected).unwrap() < 1e-13);
    assert!(run(&["riesz", "--in", &f, "--axis", "2", "--out", &r]).is_err());
}

#[test]
fn decomposing_a_constant_halves_it() {
    let dir = tempfile::tempdir().unwrap();
    let f = path(dir.path(), "c.cfld");
    run(&["gen", "constant", "--dims", "8,8", "--value", "2,-1", "--blade", "e12", "--out", &f]).unwrap();
    let plus = path(dir.path(), "p.cfld");
    let minus = path(dir.path(), "m.cfld");
    run(&["decompose", "--in", &f, "--out-plus", &plus, "--out-minus", &minus]).unwrap();
    let half = read_field(&f).unwrap().scale(c64(0.5));
    assert!(read_field(&plus).unwrap().relative_l2_error(&half).unwrap() < 1e-14);
    assert!(read_field(&minus).unwrap().relative_l2_error(&half).unwrap() < 1e-14);
}

#[test]
fn gen_is_deterministic_and_writes_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (path(dir.path(), "a.cfld"), path(dir.path(), "b.cfld"));
    let csv = path(dir.path(), "a.csv");
    let args = ["gen", "gaussian-ring", "--dims", "16,8", "--extent", "2,1", "--radius", "3"];
    run(&[&args[..], &["--out", &a, "--csv", &csv]].concat()).unwrap();
    run(&[&args[..], &["--out", &b]].concat()).unwrap();
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("x1,x2,blade,re,im"));
    assert_eq!(text.lines().count(), 1 + 16 * 8 * 4);
}

#[test]
fn bergman_command_reports_both_sides() {
    let out = run(&["bergman", "--dims", "16", "--m", "3", "--p", "1.5"]).unwrap();
    let ratio: f64 = value(&out.stdout, "ratio").parse().unwrap();
    assert!(ratio > 0.0 && ratio <= 1.01);
    assert_eq!(value(&out.stdout, "form"), "weighted-q");
    let zero = run(&["bergman", "--density", "zero", "--dims", "8", "--p", "2"]).unwrap();
    assert_eq!(value(&zero.stdout, "bergman_norm"), "0e0");
    assert!(matches!(run(&["bergman", "--dims", "8", "--m", "1", "--p", "3"]), Err(Error::InvalidExponent(_))));
    assert!(matches!(run(&["bergman", "--dims", "8", "--m", "0", "--p", "2"]), Err(Error::SingularWeight)));
}

#[test]
fn verify_report_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let report = path(dir.path(), "report.txt");
    let out = run(&["verify", "--seed", "2", "--report", &report]).unwrap();
    assert_eq!(out.code, 0, "{}", out.stderr);
    assert_eq!(std::fs::read_to_string(&report).unwrap(), out.stdout);
    assert_eq!(value(&out.stdout, "status"), "pass");
    let mutated = run(&["verify", "--seed", "2", "--mutate", "riesz-sign"]).unwrap();
    assert_eq!(mutated.code, 1);
    assert!(mutated.stdout.contains("check=hilbert.riesz_composition"));
    assert!(run(&["verify", "--profile", "huge"]).is_err());
}

#[test]
fn binary_exit_codes() {
    let exe = env!("CARGO_BIN_EXE_hardy");
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.cfld");
    std::fs::write(&bad, b"not a field").unwrap();
    let out = Process::new(exe)
        .args(["hilbert", "--in", bad.to_str().unwrap(), "--out", &path(dir.path(), "o.cfld")])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error:"));
    let out = Process::new(exe).args(["gen", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let good = path(dir.path(), "g.cfld");
    let out = Process::new(exe).args(["gen", "constant", "--n", "2", "--out", &good]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(read_field(&good).unwrap().header().dims(), &[32, 32]);
}

fn field_strategy() -> impl Strategy<Value = GridField> {
    (1usize..=4)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(1usize..=3, n),
                prop::collection::vec(0.01f64..100.0, n),
            )
        })
        .prop_flat_map(|(half, extent)| {
            let h = FieldHeader::new(half.iter().map(|d| 2 * d).collect(), extent).unwrap();
            let len = h.points() * h.blades();
            prop::collection::vec((any::<u64>(), any::<u64>()), len).prop_map(move |bits| {
                let data = bits.into_iter().map(|(a, b)| Complex64::new(f64::from_bits(a), f64::from_bits(b))).collect();
                GridField::from_data(h.clone(), data).unwrap()
            })
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn encoding_round_trips_bit_exactly(f in field_strategy()) {
        let bytes = encode(&f);
        let (header, offset) = decode_header(&bytes).unwrap();
        prop_assert_eq!(&header, f.header());
        prop_assert_eq!(bytes.len() - offset, f.data().len() * 16);
        prop_assert_eq!(encode(&decode(&bytes).unwrap()), bytes);
    }

    #[test]
    fn truncated_input_is_rejected(f in field_strategy(), cut in 1usize..64) {
        let bytes = encode(&f);
        let cut = cut.min(bytes.len());
        prop_assert!(decode(&bytes[..bytes.len() - cut]).is_err());
    }

    #[test]
    fn arbitrary_bytes_never_panic(bytes in prop::collection::vec(any::<u8>(), 0..256)) {
        let _ = decode(&bytes);
        let mut framed = b"CFLD1".to_vec();
        framed.extend_from_slice(&bytes);
        let _ = decode(&framed);
    }
}

#[test]
fn files_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let h = FieldHeader::new(vec![4, 6], vec![1.0, 3.5]).unwrap();
    let f = common::random_field(&h, &mut common::rng(5));
    let p = dir.path().join("f.cfld");
    write_field(&p, &f).unwrap();
    assert_eq!(read_field(&p).unwrap(), f);
    assert!(matches!(read_field(dir.path().join("missing.cfld")), Err(Error::Io(_))));
}
