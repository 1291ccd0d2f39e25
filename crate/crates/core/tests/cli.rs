//! The command-line interface, run in-process through `cli::run` and, for
//! environment handling, through the built binary.

use std::process::Command;

use qecc_forge::additive::SymplecticVector;
use qecc_forge::cli::{run, Outcome, EXIT_BUDGET, EXIT_OK, EXIT_USAGE, EXIT_WITNESS};
use qecc_forge::io::{parse_code_file, CodeFile};
use qecc_forge::pauli::PauliLabel;
use qecc_forge::propagation::Ledger;
use qecc_forge::registry::{Registry, REGISTRY_ENV};
use qecc_forge::stabilizer::StabilizerCode;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("qecc-forge").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let o = cli(args);
    assert_eq!(o.status, EXIT_OK, "{args:?}: {}", o.stderr);
    o.stdout
}

fn value<'a>(out: &'a str, key: &str) -> Option<&'a str> {
    let prefix = format!("{key}=");
    out.split_whitespace().find_map(|t| t.strip_prefix(prefix.as_str()))
}

fn five_qubit() -> StabilizerCode {
    let reg = Registry::builtin().unwrap();
    let CodeFile::Additive(c) = reg.get("fivequbit").unwrap().code.clone() else { panic!("kind") };
    StabilizerCode::from_classical(c).unwrap()
}

#[test]
fn stabilizer_params_lines() {
    let out = ok(&["stabilizer-params", "fivequbit"]);
    assert_eq!(out.lines().next(), Some("n=5 q=2 K=2 d=3 pure=true"));
    let out = ok(&["stabilizer-params", "shor"]);
    assert_eq!(value(&out, "pure"), Some("false"));
    assert_eq!(value(&out, "d"), Some("3"));
    let out = ok(&["stabilizer-params", "qutrit-five"]);
    assert_eq!(out.lines().next(), Some("n=5 q=3 K=3 d=3 pure=true"));
}

#[test]
fn kl_verify_exit_codes_and_witness_replay() {
    let pass = cli(&["kl-verify", "fivequbit", "--max-weight", "2"]);
    assert_eq!(pass.status, EXIT_OK, "{}", pass.stderr);
    assert!(pass.stdout.starts_with("kl=pass"));

    let fail = cli(&["kl-verify", "fivequbit", "--max-weight", "3"]);
    assert_eq!(fail.status, EXIT_WITNESS);
    assert!(fail.stdout.starts_with("status=fail"));
    let witness: PauliLabel = value(&fail.stdout, "witness").expect("witness line").parse().unwrap();
    let v = witness.vector();
    assert_eq!(v.weight(), 3);
    assert!(five_qubit().is_undetectable(&v).unwrap(), "{v} should be a logical operator");
}

#[test]
fn witness_is_independent_of_thread_count() {
    let one = cli(&["--threads", "1", "kl-verify", "fivequbit", "--max-weight", "3"]);
    let four = cli(&["--threads", "4", "kl-verify", "fivequbit", "--max-weight", "3"]);
    assert_eq!(one.status, EXIT_WITNESS);
    assert_eq!(one.stdout, four.stdout);
    let a = ok(&["--threads", "1", "distance", "steane"]);
    let b = ok(&["--threads", "3", "distance", "steane"]);
    assert_eq!(a, b);
}

#[test]
fn usage_and_budget_exit_codes() {
    assert_eq!(cli(&["no-such-command"]).status, EXIT_USAGE);
    assert_eq!(cli(&["stabilizer-params", "no-such-code"]).status, EXIT_USAGE);
    assert_eq!(cli(&["distance"]).status, EXIT_USAGE);
    assert_eq!(cli(&["syndrome", "fivequbit", "--error", "1,0 0,0"]).status, EXIT_USAGE);
    assert_eq!(cli(&["--help"]).status, EXIT_OK);
    let o = cli(&["distance", "c1-93", "--budget", "0"]);
    assert_eq!(o.status, EXIT_BUDGET, "{}", o.stderr);
    assert!(o.stderr.starts_with("budget exceeded"));
}

#[test]
fn non_divisor_is_a_verification_failure() {
    let o = cli(&["cyclic", "--field", "4", "--length", "5", "--poly", "1,0,1"]);
    assert_eq!(o.status, EXIT_WITNESS);
    assert!(value(&o.stdout, "remainder").is_some());
    let out = ok(&["cyclic", "--field", "4", "--length", "5", "--poly", "1,1"]);
    assert!(out.starts_with("n=5 k=4 deg_g=1 divides=true"));
}

#[test]
fn dual_containing_linear_code_is_not_a_stabilizer() {
    let o = cli(&["stabilizer-params", "c1-93"]);
    assert_eq!(o.status, EXIT_WITNESS);
    assert!(o.stdout.starts_with("status=fail"));
}

#[test]
fn syndrome_of_a_single_error() {
    let out = ok(&["syndrome", "fivequbit", "--error", "1,0 0,0 0,0 0,0 0,0"]);
    let code = five_qubit();
    let e = SymplecticVector { a: vec![1, 0, 0, 0, 0], b: vec![0; 5] };
    let want: Vec<String> = code.syndrome(&e).unwrap().iter().map(u32::to_string).collect();
    assert!(out.contains(&want.join(",")), "{out}");
}

#[test]
fn construction_x_and_shorten() {
    let out = ok(&["construction-x", "cx-seed"]);
    assert!(out.starts_with("n=4 k=2 e=1 length=5 self_orthogonal=true"));
    assert!(out.contains("[[5,1,3]]_2"));
    let out = ok(&["shorten", "fivequbit", "--position", "0"]);
    assert!(out.contains("output n=4 q=2 K=4 d=2"));
}

#[test]
fn verify_96_passes() {
    let out = ok(&["verify-paper-96"]);
    assert!(out.starts_with(
        "c1_dim=73 g0_divides=true candidates=6 dual_contained=true shorten_recovers_c1=true d_certificate>=5"
    ));
    assert!(out.contains("construction_x e=3 length=96"));
}

#[test]
fn out_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dual.code");
    let p = path.to_str().unwrap();
    let out = ok(&["--out", p, "dual", "fivequbit"]);
    assert!(out.contains("written="));
    let text = std::fs::read_to_string(&path).unwrap();
    let CodeFile::Additive(dual) = parse_code_file(&text).unwrap().code else { panic!("kind") };
    assert_eq!(&dual, five_qubit().normalizer());
    let again = ok(&["dual", "--in", p]);
    assert!(again.starts_with("form=symplectic n=5 kappa=6 dual_kappa=4"));
}

#[test]
fn propagate_builds_and_replays_a_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ledger.txt");
    let p = path.to_str().unwrap();
    ok(&["propagate", "--ledger", p, "--root", "[[96,50,10*]]_2 pure", "--note", "claimed"]);
    for parent in ["0", "1", "2"] {
        ok(&["propagate", "--ledger", p, "--rule", "shorten-stabilizer", "--parents", parent]);
    }
    let out = ok(&["propagate", "--ledger", p]);
    assert!(out.starts_with("replay=ok records=4"));
    let ledger = Ledger::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(ledger.get(3).unwrap().params.notation(), "[[93,53,>=7]]_2");

    let bad = cli(&["propagate", "--ledger", p, "--rule", "shorten-stabilizer", "--parents", "9"]);
    assert_ne!(bad.status, EXIT_OK);
    let tampered = std::fs::read_to_string(&path).unwrap().replace("[[93,53,>=7]]_2", "[[93,53,8]]_2");
    std::fs::write(&path, tampered).unwrap();
    assert_ne!(cli(&["propagate", "--ledger", p]).status, EXIT_OK);
}

#[test]
fn registry_listing_and_override() {
    let out = ok(&["registry"]);
    assert_eq!(out.lines().count(), Registry::builtin().unwrap().entries().len());

    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("index.txt"), "rep3 | rep3.code | three-qubit bit-flip code\n").unwrap();
    std::fs::write(
        dir.path().join("rep3.code"),
        "field p=2 m=1\nlength 3\nkind additive\nrows:\n0,1 0,1 0,0\n0,0 0,1 0,1\n",
    )
    .unwrap();
    let bin = env!("CARGO_BIN_EXE_qecc-forge");
    let o = Command::new(bin).env(REGISTRY_ENV, dir.path()).args(["stabilizer-params", "rep3"]).output().unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(String::from_utf8_lossy(&o.stdout).lines().next(), Some("n=3 q=2 K=2 d=1 pure=true"));
    let o = Command::new(bin).env(REGISTRY_ENV, dir.path()).args(["stabilizer-params", "fivequbit"]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
}
