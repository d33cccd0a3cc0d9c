use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use breakage_cli::config::{PhiFamily, Scenario};
use breakage_cli::output::Table;
use breakage_cli::Failure;

fn breakage(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_breakage")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

const SMALL: &str = r#"
name = "small"
p = 8
dt = 0.01
t_end = 1.0
[kernel]
family = "product"
alpha = 1.0
[phi]
family = "exponential"
"#;

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.display().to_string()
}

#[test]
fn scenario_round_trips_through_toml() {
    let s = Scenario::from_toml(SMALL).unwrap();
    assert_eq!(s.phi.family, PhiFamily::Exponential);
    assert_eq!(s.tails, vec![1, 2, 3, 5, 10, 20]);
    assert_eq!(Scenario::from_toml(&s.to_toml()).unwrap(), s);
    let err = Scenario::from_toml(&format!("{SMALL}\nbogus = 1\n")).unwrap_err();
    assert_eq!(err.kind, Failure::Parse);
}

#[test]
fn simulate_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "s.toml", SMALL);
    let out = dir.path().join("run");
    let res = breakage(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let states = Table::read(&out.join("states.csv")).unwrap();
    assert_eq!(states.header.len(), 9);
    assert_eq!(states.header[8], "psi_8");
    let moments = Table::read(&out.join("moments.csv")).unwrap();
    assert_eq!(moments.header, ["t", "m0", "m1", "g0moment", "lambda_moment"]);
    assert_eq!(moments.rows(), states.rows());
    let m1 = moments.column("m1").unwrap();
    assert!(m1.iter().all(|v| ((v - m1[0]) / m1[0]).abs() < 1e-12));
    let diag = fs::read_to_string(out.join("diagnostics.csv")).unwrap();
    assert!(diag.starts_with("t,newton_iterations,newton_residual\n"));
    let report = fs::read_to_string(out.join("report.txt")).unwrap();
    assert!(report.contains("PASS mass drift") && report.ends_with("result: PASS\n"));
}

#[test]
fn exit_codes_follow_failure_kind() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("o").display().to_string();
    let run = |text: &str| {
        let cfg = write(dir.path(), "c.toml", text);
        code(&breakage(&["simulate", "--config", &cfg, "--out", &out]))
    };
    assert_eq!(run("p = ["), 2);
    assert_eq!(run(&SMALL.replace("alpha = 1.0", "")), 2);
    assert_eq!(run(&SMALL.replace("t_end = 1.0", "t_end = -1.0")), 3);
    assert_eq!(run(&SMALL.replace("family = \"exponential\"", "family = \"powerlaw\"\nnu = -2.0")), 0);
    assert_eq!(run(&format!("{SMALL}[integrator]\nnewton_tol = 1e-300\nnewton_max_iter = 1\n")), 4);
    // A concave Λ breaks the tail estimate, so the tail monitor trips.
    assert_eq!(run(&format!("{SMALL}[lambda]\nexponent = 0.5\n")), 5);
    assert_eq!(Failure::Io.code(), 1);
    assert_eq!(code(&breakage(&["simulate", "--config", "/nonexistent/x.toml"])), 1);
}

#[test]
fn relative_paths_resolve_against_the_config() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "psi.txt", "0 0 1");
    write(dir.path(), "phi.txt", "# uniform, p = 3\n1 2 1 2\n1 2 2 2\n1 2 3 2\n1 3 1 1\n2 3 1 1\n1 3 2 1\n2 3 2 1\n1 3 3 1\n2 3 3 1\n");
    let cfg = write(
        dir.path(),
        "t.toml",
        "p = 3\ndt = 0.01\nt_end = 0.5\n[kernel]\nfamily = \"constant\"\n[phi]\nfamily = \"table\"\npath = \"phi.txt\"\n[initial]\nkind = \"file\"\npath = \"psi.txt\"\n",
    );
    let out = dir.path().join("o");
    let res = breakage(&["simulate", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&res), 0, "{}", String::from_utf8_lossy(&res.stderr));
    let m = Table::read(&out.join("moments.csv")).unwrap();
    assert_eq!(m.column("m1").unwrap()[0], 3.0);
}

#[test]
fn validate_examples() {
    let ok = breakage(&["validate", "phi", "exponential", "--alpha0", "1", "--alpha1", "1", "--jmax", "200", "--kmax", "200"]);
    assert_eq!(code(&ok), 0);
    assert!(String::from_utf8_lossy(&ok.stdout).contains("certified"));
    assert_eq!(code(&breakage(&["validate", "phi", "monomer", "--alpha0", "0", "--alpha1", "1"])), 0);
    assert_eq!(code(&breakage(&["validate", "phi", "powerlaw", "--nu", "-1.5"])), 0);
    assert_eq!(code(&breakage(&["validate", "kernel", "product", "--alpha", "2", "--lambda", "power:2", "--p", "40"])), 0);
    let bad = breakage(&["validate", "kernel", "product", "--alpha", "2", "--lambda", "power:1"]);
    assert_eq!(code(&bad), 3);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("counterexample"));
    assert_eq!(code(&breakage(&["validate", "phi", "uniform", "--alpha0", "0", "--alpha1", "1"])), 3);
    assert_eq!(code(&breakage(&["validate", "weights", "power", "--m", "1.5"])), 0);
    assert_eq!(code(&breakage(&["validate", "weights", "power", "--m", "3"])), 3);
}

#[test]
fn bounds_and_gronwall_commands() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "g.toml",
        "p = 10\ndt = 0.01\nt_end = 5.0\n[kernel]\nfamily = \"constant\"\n[phi]\nfamily = \"uniform\"\n",
    );
    let b = breakage(&["bounds", "--config", &cfg, "--imax", "3", "--mmax", "5"]);
    assert_eq!(code(&b), 0);
    let text = String::from_utf8_lossy(&b.stdout);
    assert!(text.contains("i,C_i") && text.contains("m,i,omega_m_i"));

    let out = dir.path().join("g");
    let g = breakage(&["gronwall", "--config", &cfg, "--perturb", "2:1e-6", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&g), 0, "{}", String::from_utf8_lossy(&g.stderr));
    let series = Table::read(&out.join("gronwall.csv")).unwrap();
    assert_eq!(series.rows(), 501);
    assert_eq!(code(&breakage(&["gronwall", "--config", &cfg, "--perturb", "2"])), 2);

    let steep = write(dir.path(), "s.toml", &fs::read_to_string(&cfg).unwrap().replace("\"constant\"", "\"product\"\nalpha = 2.0"));
    assert_eq!(code(&breakage(&["gronwall", "--config", &steep, "--perturb", "2:1e-6"])), 3);
}

#[test]
fn render_svg_command() {
    let dir = tempfile::tempdir().unwrap();
    let csv = write(dir.path(), "m.csv", "t,m0,m1\n0,1,2\n1,1.5,2\n2,1.75,2\n");
    let svg = dir.path().join("m.svg");
    let args = ["render-svg", "--csv", &csv, "--cols", "m0,m1", "--out", svg.to_str().unwrap()];
    assert_eq!(code(&breakage(&args)), 0);
    let first = fs::read(&svg).unwrap();
    assert_eq!(code(&breakage(&args)), 0);
    assert_eq!(fs::read(&svg).unwrap(), first);
    let missing = breakage(&["render-svg", "--csv", &csv, "--cols", "m0,nope", "--out", svg.to_str().unwrap()]);
    assert_ne!(code(&missing), 0);
    assert!(String::from_utf8_lossy(&missing.stderr).contains("nope"));
    assert_ne!(code(&breakage(&["render-svg", "--csv", &csv, "--cols", "", "--out", svg.to_str().unwrap()])), 0);
}

#[test]
fn unknown_preset_is_a_parse_error() {
    assert_eq!(code(&breakage(&["preset", "fig9"])), 2);
}
