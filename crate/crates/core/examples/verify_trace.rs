//! Serialize a glue trace, re-verify it from scratch, then tamper with it.

use bezout::cli::{self, Command, Options};

const CONFIG: &str = r#"{
  "f": ["z", "1 - z"],
  "base": {"g": ["1", "1"]},
  "perturbations": [{"(1,2)": "z/1000"}, {"(1,2)": "z^2/1000"}, {"(1,2)": "z^3/1000"}],
  "stages": 2
}"#;

fn main() {
    let opts = Options::default();
    let glued = cli::run(Command::Glue, CONFIG, &opts);
    assert_eq!(glued.code, cli::EXIT_OK, "{}", glued.stderr);

    let verified = cli::run(Command::Verify, &glued.stdout, &opts);
    println!(
        "original trace: exit {} {}",
        verified.code,
        verified.stdout.trim()
    );

    let mut trace: serde_json::Value =
        serde_json::from_str(&glued.stdout).expect("glue emits JSON");
    trace["stages"][1]["bound"] = serde_json::Value::String("0".into());
    let tampered = cli::run(Command::Verify, &trace.to_string(), &opts);
    println!(
        "understated bound: exit {} {}",
        tampered.code,
        tampered.stderr.trim()
    );
}
