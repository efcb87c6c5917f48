//! End-to-end checks of the command-line surface: exit codes, round
//! trips, byte determinism of seeded outputs.

use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sigmacol"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn sigmacol")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).to_string()
}

#[test]
fn usage_error_exits_one() {
    let o = run(&["no-such-verb"]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&["gen", "wegner"]); // missing -o
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn gen_clique_example() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("w4.graph");
    let o = run(&["gen", "wegner", "--k", "4", "-o", graph.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = run(&["clique", "--square", "-i", graph.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("13"));
}

#[test]
fn generated_files_reparse_and_check() {
    let dir = tempfile::tempdir().unwrap();
    for (family, flag, val, expect_embedded) in [
        ("wegner", "--k", "3", true),
        ("borodin", "--k", "4", true),
        ("subdivided-complete", "--n", "4", false),
    ] {
        let path = dir.path().join(format!("{family}.inst"));
        let o = run(&["gen", family, flag, val, "-o", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        let o = run(&["check", "-i", path.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            text.contains("surface_chi"),
            expect_embedded,
            "{family} format"
        );
    }
}

#[test]
fn seeded_outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("dw.graph");
    // a multigraph with lists, fed to the engine twice
    let inst = dir.path().join("inst.txt");
    let mut text = String::new();
    for (i, (u, v)) in [(0, 1), (0, 1), (1, 2), (2, 0)].iter().enumerate() {
        text.push_str(&format!("edge {u} {v} {i}\n"));
    }
    for i in 0..4 {
        text.push_str(&format!("list {i}: 0 1 2 3 4 5\n"));
    }
    std::fs::write(&inst, text).unwrap();
    // identical argv and seed twice over: the output file must be
    // byte-identical
    let out = dir.path().join("col.txt");
    let mut captures: Vec<Vec<u8>> = Vec::new();
    for _ in 0..2 {
        let o = bin()
            .args([
                "kahn",
                "run",
                "-i",
                inst.to_str().unwrap(),
                "--seed",
                "9",
                "--retries",
                "4",
                "-o",
                out.to_str().unwrap(),
            ])
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
        captures.push(std::fs::read(&out).unwrap());
    }
    assert_eq!(captures[0], captures[1]);
    let _ = graph;
}

#[test]
fn validation_failure_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("bad.graph");
    // a dishonest cellular flag
    std::fs::write(
        &graph,
        "surface_chi 2 cellular 0\nrot 0: 1 2\nrot 1: 2 0\nrot 2: 0 1\n",
    )
    .unwrap();
    let o = run(&["check", "-i", graph.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cellular"));
}

#[test]
fn polytope_member_and_chi_f() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("tri.graph");
    std::fs::write(&graph, "edge 0 1 0\nedge 1 2 1\nedge 2 0 2\n").unwrap();
    let xfile = dir.path().join("x.txt");
    std::fs::write(&xfile, "x 0 1/3\nx 1 1/3\nx 2 1/3\n").unwrap();
    let o = run(&[
        "polytope",
        "member",
        "-i",
        graph.to_str().unwrap(),
        "--x",
        xfile.to_str().unwrap(),
        "--scale",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("inside"));

    std::fs::write(&xfile, "x 0 1/2\nx 1 1/2\nx 2 1/2\n").unwrap();
    let o = run(&[
        "polytope",
        "member",
        "-i",
        graph.to_str().unwrap(),
        "--x",
        xfile.to_str().unwrap(),
        "--scale",
        "1",
    ]);
    assert_eq!(stdout(&o).lines().next(), Some("outside"));

    let o = run(&["polytope", "chi-f", "-i", graph.to_str().unwrap()]);
    assert_eq!(stdout(&o).lines().next(), Some("3"));
}

#[test]
fn exact_colour_subdivided_complete() {
    let dir = tempfile::tempdir().unwrap();
    let inst = dir.path().join("sk4.inst");
    let o = run(&["gen", "subdivided-complete", "--n", "4", "-o", inst.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&["colour", "--mode", "exact", "-i", inst.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("4"));
}

#[test]
fn discharge_detect_and_ledger() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("w6.graph");
    let o = run(&["gen", "wegner", "--k", "6", "-o", graph.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = run(&[
        "discharge",
        "detect",
        "-i",
        graph.to_str().unwrap(),
        "--zeta",
        "132",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("witness S1"));
    let csv = dir.path().join("ledger.csv");
    let o = run(&[
        "discharge",
        "ledger",
        "-i",
        graph.to_str().unwrap(),
        "--zeta",
        "8",
        "-o",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.contains("vertex,initial,final,transfers"));
}

#[test]
fn pipeline_mode_runs_end_to_end() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("b3.graph");
    let o = run(&["gen", "borodin", "--k", "3", "-o", graph.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let out = dir.path().join("col.txt");
    let o = run(&[
        "colour",
        "--mode",
        "pipeline",
        "--square",
        "-i",
        graph.to_str().unwrap(),
        "--colours",
        "12",
        "--seed",
        "5",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    // the emitted colouring re-validates through check
    let sigma = dir.path().join("b3.sigma");
    let text = std::fs::read_to_string(&graph).unwrap();
    let parsed = sigmacol::io::parse_embedded(&text).unwrap();
    let full = sigmacol::sigma::SigmaSystem::full_neighbourhood(parsed.graph());
    std::fs::write(&sigma, sigmacol::io::write_sigma(&full)).unwrap();
    let o = run(&[
        "check",
        "-i",
        graph.to_str().unwrap(),
        "--sigma",
        sigma.to_str().unwrap(),
        "--colouring",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
}
