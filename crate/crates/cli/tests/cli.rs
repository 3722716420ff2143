use std::process::{Command, Output};

fn carrousel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_carrousel")).args(args).output().expect("binary runs")
}

#[test]
fn whitney_text_json_and_dot() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("r.json");
    let dot = dir.path().join("r.dot");
    let out = carrousel(&[
        "-i",
        "z^2 - x*y^2",
        "--json",
        json.to_str().unwrap(),
        "--dot",
        dot.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("covering degree N = 2"));
    assert!(text.contains("Q-manifold true"));

    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(v["version"], "1");
    assert_eq!(v["covering_degree"], 2);
    assert_eq!(v["sigma"][0]["graph"]["cycle_rank"], 0);
    assert!(std::fs::read_to_string(&dot).unwrap().starts_with("graph vanishing_zone {"));
}

#[test]
fn input_from_file_and_probe() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("germ.txt");
    std::fs::write(&input, "z^3 - x*y^2\n").unwrap();
    let out = carrousel(&["-i", input.to_str().unwrap(), "--probe", "--probe-eta", "1e-6", "--seed", "7"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().contains("agrees"));
}

#[test]
fn trunk_file_gives_lens_verdict() {
    let dir = tempfile::tempdir().unwrap();
    let trunk = dir.path().join("trunk.toml");
    std::fs::write(
        &trunk,
        "boundary_tori = 1\ngenus_sum = 0\nexceptional_count = 0\ncycle_rank = 0\nsolid_torus_flag = true\n",
    )
    .unwrap();
    let out = carrousel(&["-i", "z^2 - x*y^2", "--trunk", trunk.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    assert!(String::from_utf8(out.stdout).unwrap().contains("open case (lens)"));
}

#[test]
fn exit_codes() {
    assert_eq!(carrousel(&["-i", "z^2 - w"]).status.code(), Some(3));
    assert_eq!(carrousel(&["-i", "z^2 -"]).status.code(), Some(3));
    assert_eq!(carrousel(&["-i", "z^2"]).status.code(), Some(4));
    assert_eq!(carrousel(&["-i", "z^2 - x*y^2", "--truncation", "0"]).status.code(), Some(4));
    assert_eq!(carrousel(&["-i", "z^2 - x*y^2", "--shear", "1,2"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let trunk = dir.path().join("bad.toml");
    std::fs::write(&trunk, "boundary_tori = \"two\"\n").unwrap();
    let out = carrousel(&["-i", "z^2 - x*y^2", "--trunk", trunk.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(6));
    assert!(String::from_utf8(out.stderr).unwrap().contains("hint:"));
}

#[test]
fn shear_is_applied() {
    let out = carrousel(&["-i", "z^2 - x*y^2", "--shear", "0,0,0"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("f = "));
}
