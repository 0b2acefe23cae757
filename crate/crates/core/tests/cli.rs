use std::path::PathBuf;
use std::process::{Command, Output};

fn workdir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hl-cli-{name}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hiding-leader"))
        .args(args)
        .output()
        .expect("spawn CLI")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn core_prints_one_line_per_vertex() {
    let dir = workdir("core");
    let g = dir.join("k4.txt");
    std::fs::write(&g, "5\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n3 4\n").unwrap();
    let text = stdout_of(&["core", g.to_str().unwrap()]);
    assert_eq!(text, "0 3\n1 3\n2 3\n3 3\n4 1\ndegeneracy 3\n");
}

#[test]
fn solve_degree_prints_plan_and_stats() {
    let dir = workdir("degree");
    let g = dir.join("tri.txt");
    std::fs::write(&g, "7\n#L 0 1 2\n0 1\n0 2\n1 2\n").unwrap();
    let g = g.to_str().unwrap();

    let text = stdout_of(&[
        "solve-degree",
        "--algo",
        "exact",
        "--graph",
        g,
        "--b",
        "3",
        "--d",
        "2",
    ]);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(&lines[..3], ["3 4", "3 5", "4 5"]);
    let stats: serde_json::Value = serde_json::from_str(lines[3]).unwrap();
    assert_eq!(stats["decision"], "yes");
    assert_eq!(stats["edges_added"], 3);
    assert_eq!(stats["lb"], 2);
    assert!(stats["runtime_ms"].is_null());

    let text = stdout_of(&[
        "solve-degree",
        "--algo",
        "exact",
        "--graph",
        g,
        "--b",
        "2",
        "--d",
        "2",
    ]);
    let stats: serde_json::Value = serde_json::from_str(text.trim()).unwrap();
    assert_eq!(stats["decision"], "no");

    let text = stdout_of(&[
        "solve-degree",
        "--algo",
        "hlda",
        "--graph",
        g,
        "--d",
        "2",
        "--timing",
    ]);
    let stats: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    assert!(stats["runtime_ms"].is_number());

    let out = run(&["solve-degree", "--algo", "exact", "--graph", g, "--d", "2"]);
    assert!(!out.status.success());
}

#[test]
fn solve_core_respects_cap() {
    let dir = workdir("core-cap");
    let g = dir.join("sparse.txt");
    std::fs::write(&g, "10\n#L 0\n0 1\n").unwrap();
    let g = g.to_str().unwrap();
    let out = run(&[
        "solve-core",
        "--algo",
        "exact",
        "--graph",
        g,
        "--b",
        "1",
        "--d",
        "9",
    ]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("candidate"));
    let text = stdout_of(&[
        "solve-core",
        "--algo",
        "leq1",
        "--graph",
        g,
        "--b",
        "4",
        "--d",
        "9",
    ]);
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn gen_captain_tags_captains() {
    let text = stdout_of(&["gen", "captain", "--h", "2", "--p", "1"]);
    assert!(text.contains("\n#L 0 1\n"));
    assert!(text.contains("\n#C 2 3\n"));
    let read = hiding_leader::io::read_edge_list(&text).unwrap();
    assert_eq!(read.captains, vec![2, 3]);
    assert_eq!(read.graph.m(), 4);
}

#[test]
fn gen_writes_output_file() {
    let dir = workdir("gen");
    let out = dir.join("ws.txt");
    let printed = stdout_of(&[
        "gen",
        "ws",
        "--n",
        "50",
        "--avgdeg",
        "4",
        "--beta",
        "0",
        "-o",
        out.to_str().unwrap(),
    ]);
    assert!(printed.is_empty());
    let file = hiding_leader::io::read_edge_list(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert!(file.graph.degrees().iter().all(|&d| d == 4));
}

#[test]
fn bad_inputs_fail_with_line_numbers() {
    let dir = workdir("bad");
    let g = dir.join("loop.txt");
    std::fs::write(&g, "3\n0 1\n2 2\n").unwrap();
    let out = run(&["core", g.to_str().unwrap()]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));

    let sc = dir.join("sc.txt");
    std::fs::write(&sc, "2 1 1\n3\n").unwrap();
    let out = run(&["gen", "setcover-hl", sc.to_str().unwrap()]);
    assert!(!out.status.success());
}

#[test]
fn bench_captain_csv() {
    let text = stdout_of(&[
        "bench", "captain", "--plist", "2", "--hlist", "1,3", "--total", "100",
    ]);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("h,p,m,total,max_leader_core,min_captain_core,max_captain_core,diff_primary,diff_min,error")
    );
    assert_eq!(lines.next(), Some("1,2,95,100,3,3,3,0,0,"));
    assert_eq!(lines.count(), 1);
}

#[test]
fn oracle_reports_optimum() {
    let dir = workdir("oracle");
    let g = dir.join("tri.txt");
    std::fs::write(&g, "7\n#L 0 1 2\n0 1\n0 2\n1 2\n").unwrap();
    let text = stdout_of(&[
        "oracle",
        "--graph",
        g.to_str().unwrap(),
        "--d",
        "2",
        "--kind",
        "degree",
    ]);
    assert_eq!(text, "optimal 3\n3 4\n3 5\n4 5\n");
    let text = stdout_of(&[
        "oracle",
        "--graph",
        g.to_str().unwrap(),
        "--b",
        "2",
        "--d",
        "2",
    ]);
    assert_eq!(text, "none within budget\n");
}
