use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hilbert-lattice"))
}

fn scratch(name: &str) -> PathBuf {
    let dir =
        std::env::temp_dir().join(format!("hilbert-lattice-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

#[test]
fn census_is_deterministic_across_strategies() {
    let dir = scratch("census");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    let svg = dir.join("hist.svg");
    let out = run(&[
        "census",
        "--halfwidth",
        "200",
        "--out",
        a.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out2 = run(&[
        "--sequential",
        "census",
        "--halfwidth",
        "200",
        "--out",
        b.to_str().unwrap(),
    ]);
    assert!(out2.status.success());
    let csv = std::fs::read_to_string(&a).unwrap();
    assert_eq!(csv, std::fs::read_to_string(&b).unwrap());
    assert_eq!(csv.lines().count(), 400);
    assert!(csv.contains("18446744073709551616,64,1"));
    let svg = std::fs::read_to_string(&svg).unwrap();
    assert!(svg.contains("data-x=") && svg.contains("data-y="));
    assert!(String::from_utf8_lossy(&out.stderr).contains("count,mean,std"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["census", "--halfwidth", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["census", "--lo", "10", "--hi", "5"]).status.code(),
        Some(2)
    );
    assert_eq!(run(&["spectrum", "--l", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["scramble-sweep", "--l", "5", "--swaps", "9"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn sweep_and_scan_are_reproducible() {
    let dir = scratch("sweep");
    let a = dir.join("a.csv");
    let b = dir.join("b.csv");
    let svg = dir.join("sweep.svg");
    for (path, extra) in [(&a, None), (&b, Some("--sequential"))] {
        let mut cmd = bin();
        if let Some(flag) = extra {
            cmd.arg(flag);
        }
        let out = cmd
            .args([
                "scramble-sweep",
                "--l",
                "20",
                "--seed",
                "3",
                "--out",
                path.to_str().unwrap(),
            ])
            .args(["--svg", svg.to_str().unwrap()])
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("n_swaps,tunnel_trace"));
    assert_eq!(text.lines().count(), 1 + 21);
    let svg = std::fs::read_to_string(&svg).unwrap();
    let second = text.lines().nth(2).unwrap();
    let y: f64 = second.split(',').nth(1).unwrap().parse().unwrap();
    assert!(svg.contains(&format!(r#"data-x="1e0" data-y="{y:e}""#)));

    let scan = dir.join("scan.csv");
    let out = run(&[
        "spread-scan",
        "--l",
        "10",
        "--partitions",
        "canonical,scrambled:3",
        "--out",
        scan.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = std::fs::read_to_string(&scan).unwrap();
    assert!(rows.starts_with("partition,n,E_n,spread,projected_energy,note"));
    assert_eq!(rows.lines().count(), 1 + 2 * 21);
    assert!(rows.contains("cyclic-artifact"));
}

#[test]
fn spectrum_writes_wavefunctions() {
    let dir = scratch("spectrum");
    let out_path = dir.join("spectrum.csv");
    let out = run(&["spectrum", "--l", "10", "--out", out_path.to_str().unwrap()]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let spec = std::fs::read_to_string(&out_path).unwrap();
    assert!(spec.starts_with("n,E_n"));
    assert_eq!(spec.lines().count(), 22);
    let wf = std::fs::read_to_string(dir.join("wavefunctions.csv")).unwrap();
    assert!(wf.starts_with("j,phi_j,V_j,psi_1,psi_2,psi_18"));
}
