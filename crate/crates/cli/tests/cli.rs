use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn blockset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_blockset"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn put(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn json(p: impl AsRef<Path>) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn bounds_table_rows() {
    let o = blockset(&["bounds", "table", "--k-range", "2..20", "--q-list", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "k,q,h,sbs_lower,heger_nagy,m_upper,outer_len_lower,existence_N,saturating_upper"
    );
    assert_eq!(lines.len(), 39);
    assert_eq!(lines[3], "4,2,2,9,17,21,7,14,21");
}

#[test]
fn super_construction_points_and_certificate() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "b1.txt");
    let cert = path(&dir, "b1.json");
    let o = blockset(&[
        "construct",
        "super",
        "--q",
        "3",
        "--i",
        "1",
        "--verify",
        "--out",
        &out,
        "--json",
        &cert,
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 146);
    assert!(text.starts_with("field p=3 m=1 h=1\npoints 144 12 level=base\n"));
    let c = json(&cert);
    assert_eq!(c["size"], 144);
    assert_eq!(c["sbs"]["status"], "verified");
    assert_eq!(c["sbs"]["hyperplanes"], 265720);
    assert_eq!(c["bound"], "192");
}

#[test]
fn outputs_do_not_depend_on_threads() {
    let dir = TempDir::new().unwrap();
    let mut files = Vec::new();
    for t in ["1", "3"] {
        let out = path(&dir, &format!("p{t}.txt"));
        let cert = path(&dir, &format!("c{t}.json"));
        let o = blockset(&[
            "--threads",
            t,
            "construct",
            "super",
            "--q",
            "2",
            "--i",
            "1",
            "--verify",
            "--out",
            &out,
            "--json",
            &cert,
        ]);
        assert_eq!(o.status.code(), Some(0));
        files.push((fs::read(&out).unwrap(), fs::read(&cert).unwrap()));
    }
    assert_eq!(files[0], files[1]);
}

#[test]
fn hyperplane_witness_replays() {
    let dir = TempDir::new().unwrap();
    let pts = put(
        &dir,
        "plane.txt",
        "field p=2 m=1 h=1\npoints 3 3\n1 0 0\n0 1 0\n1 1 0\n",
    );
    let rep = path(&dir, "r.json");
    let o = blockset(&["verify", "sbs", "--in", &pts, "--json", &rep, "--seed", "7"]);
    assert_eq!(o.status.code(), Some(1));
    let r = json(&rep);
    assert_eq!(r["verdict"], false);
    assert_eq!(r["seed"], 7);
    assert_eq!(r["witness"]["kind"], "hyperplane");
    assert_eq!(r["witness"]["index"], 0);
    let o = blockset(&["verify", "sbs", "--in", &pts, "--replay", &rep]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("\"replayed\": true"));
    let good = put(
        &dir,
        "tet.txt",
        "field p=2 m=1 h=1\npoints 6 3\n1 0 0\n0 1 0\n1 1 0\n0 0 1\n1 0 1\n0 1 1\n",
    );
    assert_eq!(blockset(&["verify", "sbs", "--in", &good]).status.code(), Some(0));
    assert_eq!(
        blockset(&["verify", "sbs", "--in", &good, "--replay", &rep])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn reduce_and_concat_reproduce_examples() {
    let dir = TempDir::new().unwrap();
    let c4 = put(
        &dir,
        "c4.txt",
        "field p=2 m=1 h=2\nmatrix 2 4 level=top\n1 0 1 1\n0 1 1 2\n",
    );
    let o = blockset(&["reduce", "--code", &c4]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "field p=2 m=1 h=2\nmatrix 4 12 level=base\n\
         1 0 1 0 0 0 1 0 1 1 0 1\n0 1 1 0 0 0 0 1 1 0 1 1\n\
         0 0 0 1 0 1 1 0 1 0 1 1\n0 0 0 0 1 1 0 1 1 1 1 0\n"
    );
    let c8 = put(
        &dir,
        "c8.txt",
        "field p=2 m=1 h=3\nmatrix 2 4 level=top\n1 0 1 2\n0 1 1 4\n",
    );
    let inner = put(
        &dir,
        "i.txt",
        "field p=2 m=1 h=3\nmatrix 3 4 level=base\n1 0 0 1\n0 1 0 1\n0 0 1 1\n",
    );
    let o = blockset(&["concat", "--outer", &c8, "--inner", &inner]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("matrix 6 16 level=base"));
    let o = blockset(&["concat", "--outer", &c8, "--inner", &inner, "--inner", &inner]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn outer_checks_and_replays() {
    let dir = TempDir::new().unwrap();
    let two = put(&dir, "two.txt", "field p=2 m=1 h=2\npoints 2 2 level=top\n1 0\n0 1\n");
    let three = put(
        &dir,
        "three.txt",
        "field p=2 m=1 h=2\npoints 3 2 level=top\n1 0\n0 1\n1 1\n",
    );
    let rep = path(&dir, "o.json");
    assert_eq!(
        blockset(&["verify", "outer-sbs", "--in", &two, "--json", &rep])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        blockset(&["verify", "outer-sbs", "--in", &two, "--replay", &rep])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        blockset(&["verify", "outer-sbs", "--in", &three]).status.code(),
        Some(0)
    );
    assert_eq!(
        blockset(&["verify", "outer-minimal", "--in", &three]).status.code(),
        Some(0)
    );
    // on a Baer subline: an outer SBS without avoidance
    let av = path(&dir, "a.json");
    assert_eq!(
        blockset(&["verify", "avoidance", "--in", &three, "--json", &av])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        blockset(&["verify", "avoidance", "--in", &three, "--replay", &av])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        blockset(&["verify", "hermitian", "--in", &three]).status.code(),
        Some(1)
    );
    let code = put(&dir, "c.txt", "field p=2 m=1 h=2\nmatrix 2 2 level=top\n1 0\n0 1\n");
    let cr = path(&dir, "c.json");
    assert_eq!(
        blockset(&["verify", "outer-minimal", "--in", &code, "--json", &cr])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(json(&cr)["witness"]["kind"], "codeword-pair");
    assert_eq!(
        blockset(&["verify", "outer-minimal", "--in", &code, "--replay", &cr])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn four_points_and_sublines() {
    let dir = TempDir::new().unwrap();
    let out = path(&dir, "x.txt");
    let o = blockset(&[
        "construct",
        "fourpoint",
        "--K",
        "2",
        "--tower",
        "3,1,2",
        "--verify",
        "--out",
        &out,
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(blockset(&["verify", "subline", "--in", &out]).status.code(), Some(0));
    let baer = put(
        &dir,
        "b.txt",
        "field p=3 m=1 h=2\npoints 4 2 level=top\n1 0\n0 1\n1 1\n1 2\n",
    );
    assert_eq!(blockset(&["verify", "subline", "--in", &baer]).status.code(), Some(1));
}

#[test]
fn saturation_and_minimality() {
    let dir = TempDir::new().unwrap();
    let tet = put(
        &dir,
        "t.txt",
        "field p=2 m=1 h=2\npoints 6 3 level=top\n1 0 0\n0 1 0\n1 1 0\n0 0 1\n1 0 1\n0 1 1\n",
    );
    assert_eq!(
        blockset(&["verify", "saturating", "--in", &tet, "--rho", "1"])
            .status
            .code(),
        Some(0)
    );
    let rep = path(&dir, "s.json");
    assert_eq!(
        blockset(&["verify", "saturating", "--in", &tet, "--rho", "2", "--json", &rep])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(json(&rep)["witness"]["kind"], "smaller-rho");
    assert_eq!(
        blockset(&["verify", "saturating", "--in", &tet, "--rho", "2", "--no-minimality"])
            .status
            .code(),
        Some(0)
    );
    let out = path(&dir, "tet.txt");
    assert_eq!(
        blockset(&["construct", "tetrahedron", "--k", "4", "--q", "3", "--out", &out])
            .status
            .code(),
        Some(0)
    );
    for e in ["pairwise", "geometric"] {
        assert_eq!(
            blockset(&["verify", "minimal", "--in", &out, "--engine", e])
                .status
                .code(),
            Some(0)
        );
    }
}

#[test]
fn errors_exit_two_with_json() {
    let o = blockset(&["verify", "sbs", "--in", "/nonexistent/file"]);
    assert_eq!(o.status.code(), Some(2));
    let e: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert!(e["error"].as_str().unwrap().contains("nonexistent"));
    assert_eq!(blockset(&["reproduce", "nope"]).status.code(), Some(2));
    assert_eq!(blockset(&["construct", "rnt", "--K", "3"]).status.code(), Some(2));
    let o = blockset(&[
        "--cap-hyperplanes",
        "10",
        "construct",
        "super",
        "--q",
        "3",
        "--i",
        "1",
        "--verify",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dir = TempDir::new().unwrap();
    let big = put(&dir, "big.txt", "field p=3 m=1 h=1\npoints 1 6\n1 0 0 0 0 0\n");
    let o = blockset(&["--cap-hyperplanes", "10", "verify", "sbs", "--in", &big]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn reproduce_suites() {
    let o = blockset(&["reproduce", "paper-examples"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().filter(|l| l.starts_with("PASS")).count(), 4);
}
