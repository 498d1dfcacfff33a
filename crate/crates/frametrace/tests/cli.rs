mod common;

use common::{frametrace, frametrace_env, s, Fixtures};
use frametrace::io;
use frametrace_core::C64;

#[test]
fn group_analyze_builtin() {
    let r = frametrace(&["group", "--builtin", "dihedral:4", "analyze"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.value("commutant_dim"), 8);
    assert_eq!(r.value("conjugacy_classes"), 5);
    assert_eq!(r.value("characters"), 4);

    let r = frametrace(&["group", "--builtin", "cyclic:6", "analyze"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.value("characters"), 6);
    assert_eq!(r.value("abelian"), true);
}

#[test]
fn group_analyze_large_order_uses_characters() {
    let r = frametrace(&["group", "--builtin", "cyclic:2*dihedral:20", "analyze"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.value("commutant_method"), "character");
    assert_eq!(r.value("commutant_dim"), 80);
}

#[test]
fn group_file_with_unknown_label_gets_numeric_irreps() {
    let fx = Fixtures::new("dihedral:3");
    let mut file = io::group_file(&fx.group);
    file.label = "my-s3".into();
    let p = fx.path("g.json");
    io::write_json(&p, &file).unwrap();
    let r = frametrace(&["group", "--file", s(&p), "analyze"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.value("irreps_source"), "numeric");
    let dims: Vec<u64> = r
        .value("irreps")
        .as_array()
        .unwrap()
        .iter()
        .map(|i| i["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [1, 1, 2]);
    assert!(r.report()["inputs"][0]["name"].as_str().unwrap().ends_with("g.json"));
}

#[test]
fn group_analyze_with_irrep_file() {
    let fx = Fixtures::new("heisenberg:3");
    let table = frametrace_core::plancherel::builtin_irreps(&fx.group).unwrap();
    let p = fx.path("irreps.json");
    io::write_json(&p, &io::irrep_file(&table)).unwrap();
    let r = frametrace(&["group", "--builtin", "heisenberg:3", "analyze", "--irreps", s(&p)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.value("irreps_source"), "file");
}

#[test]
fn bad_group_file_exits_2() {
    let fx = Fixtures::new("cyclic:3");
    let p = fx.write(
        "bad.json",
        r#"{"label": "bad", "order": 3, "cayley": [[0,2,1],[1,0,2],[2,1,0]]}"#,
    );
    let r = frametrace(&["group", "--file", s(&p), "analyze"]);
    assert_eq!(r.code, 2);
    assert!(
        r.stderr.contains("NotAGroup") || r.stderr.to_lowercase().contains("not a group"),
        "{}",
        r.stderr
    );
    assert!(r.stdout.is_empty());
}

#[test]
fn malformed_inputs_exit_2() {
    let fx = Fixtures::new("cyclic:4");
    let garbage = fx.write("garbage.json", "{ not json");
    let extra = fx.write(
        "extra.json",
        r#"{"group": "cyclic:4", "data": [[1,0],[0,0],[0,0],[0,0]], "note": 1}"#,
    );
    let short = fx.write("short.json", r#"{"group": "cyclic:4", "data": [[1,0]]}"#);
    let eta = fx.random_vector("eta.json", 1);
    for args in [
        vec!["frame", "dual", "--window", s(&garbage)],
        vec!["frame", "dual", "--window", s(&extra)],
        vec!["frame", "dual", "--window", s(&short)],
        vec!["frame", "dual", "--window", "/nonexistent/eta.json"],
        // vector labelled cyclic:4 against another group
        vec!["frame", "--builtin", "cyclic:5", "dual", "--window", s(&eta)],
        vec!["group", "--builtin", "nonsense:3", "analyze"],
        vec!["frame", "decompose"],
        vec!["--tol", "-1", "group", "--builtin", "cyclic:2", "analyze"],
        vec!["gabor", "dual", "--L", "12", "--a", "5", "--b", "2"],
        vec!["gabor", "nonsense"],
    ] {
        let r = frametrace(&args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stdout);
        assert!(!r.stderr.is_empty());
    }
}

#[test]
fn frame_dual_then_check_pair() {
    let fx = Fixtures::new("dihedral:4");
    let eta = fx.random_vector("eta.json", 3);
    let psi = fx.path("psi.json");
    let r = frametrace(&["frame", "dual", "--window", s(&eta), "--emit", s(&psi)]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.value("group"), "dihedral:4");

    let r = frametrace(&["frame", "check", "--pair", s(&eta), s(&psi)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    for name in ["admissible", "tracial", "fiber"] {
        let c = r.check(name);
        assert_eq!(c["pass"], true);
        assert!(c["residual"].as_f64().unwrap() <= 1e-9, "{name}: {c}");
    }
    assert_eq!(r.report()["inputs"].as_array().unwrap().len(), 2);
}

#[test]
fn frame_check_rejects_perturbed_pair_consistently() {
    let fx = Fixtures::new("heisenberg:3");
    let eta = fx.random_vector("eta.json", 5);
    let psi = fx.path("psi.json");
    assert_eq!(
        frametrace(&["frame", "dual", "--window", s(&eta), "--emit", s(&psi)]).code,
        0
    );
    let mut data = io::load_vector(&psi, &fx.group).unwrap().value.data().to_vec();
    data[4] += C64::new(1e-4, 0.0);
    let bad = fx.vector("bad.json", data);
    let r = frametrace(&["frame", "check", "--pair", s(&eta), s(&bad)]);
    assert_eq!(r.code, 1);
    for name in ["admissible", "tracial", "fiber"] {
        assert_eq!(r.check(name)["pass"], false, "{name}");
    }
    assert_eq!(r.check("criteria-agree")["pass"], true);
}

#[test]
fn frame_tighten_is_self_dual() {
    let fx = Fixtures::new("cyclic:2*dihedral:3");
    let eta = fx.random_vector("eta.json", 9);
    let t = fx.path("t.json");
    let r = frametrace(&["frame", "tighten", "--window", s(&eta), "--emit", s(&t)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    let r = frametrace(&["frame", "check", "--pair", s(&t), s(&t)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
}

#[test]
fn frame_dual_of_non_frame_vector_is_a_failed_check() {
    let fx = Fixtures::new("cyclic:4");
    // the constant vector only sees the trivial character
    let ones = fx.vector("ones.json", vec![C64::new(1.0, 0.0); 4]);
    let r = frametrace(&["frame", "dual", "--window", s(&ones)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.check("frame-vector")["pass"], false);
    assert!(r.value("error").as_str().unwrap().starts_with("NotAFrame"));
}

#[test]
fn frame_on_subspace() {
    let fx = Fixtures::new("dihedral:3");
    let eta = fx.random_vector("eta.json", 11);
    let gen = io::load_vector(&eta, &fx.group).unwrap().value.data().to_vec();
    let sub = fx.subspace("sub.json", &[gen]);
    let psi = fx.path("psi.json");
    let r = frametrace(&[
        "frame",
        "dual",
        "--window",
        s(&eta),
        "--subspace",
        s(&sub),
        "--emit",
        s(&psi),
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.value("subspace_dim"), 6);

    let r = frametrace(&["frame", "check", "--pair", s(&eta), s(&psi), "--subspace", s(&sub)]);
    assert_eq!(r.code, 0, "{}", r.stdout);

    // the trivial isotypic subspace does not contain a generic window
    let trivial = fx.subspace("trivial.json", &[vec![C64::new(1.0, 0.0); 6]]);
    let r = frametrace(&["frame", "dual", "--window", s(&eta), "--subspace", s(&trivial)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.check("window-in-subspace")["pass"], false);

    let r = frametrace(&["frame", "decompose", "--subspace", s(&trivial)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert!((r.value("nu").as_f64().unwrap() - 1.0 / 6.0).abs() < 1e-12);
    assert_eq!(r.value("ranks"), serde_json::json!([1, 0, 0]));
}

#[test]
fn decompose_identity_on_cyclic_2() {
    let r = frametrace(&["frame", "--builtin", "cyclic:2", "decompose"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.value("ranks"), serde_json::json!([1, 1]));
    assert_eq!(r.value("nu"), 1.0);
}

#[test]
fn gabor_reference_emits_tight_window() {
    let fx = Fixtures::new("cyclic:1");
    let w = fx.path("g0.json");
    let r = frametrace(&[
        "gabor",
        "reference",
        "--L",
        "12",
        "--a",
        "3",
        "--b",
        "2",
        "--emit",
        s(&w),
    ]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.check("tight")["pass"], true);
    assert_eq!(r.check("self-dual")["pass"], true);
    let file = io::load_window(&w).unwrap().value;
    assert_eq!((file.l, file.a, file.b), (12, 3, 2));
    // the emitted window feeds back in as its own dual
    let r = frametrace(&["gabor", "wexler-raz", "--window", s(&w), "--candidate", s(&w)]);
    assert_eq!(r.code, 0, "{}", r.stdout);

    let r = frametrace(&["gabor", "reference", "--L", "4", "--a", "4", "--b", "2"]);
    assert_eq!(r.code, 2);
}

#[test]
fn gabor_wexler_raz_reports_constant() {
    let r = frametrace(&["gabor", "wexler-raz", "--L", "12", "--a", "3", "--b", "2"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.value("constant"), 0.5);
    assert_eq!(r.value("candidate_source"), "canonical-dual");

    let r = frametrace(&["gabor", "wexler-raz", "--L", "4", "--a", "2", "--b", "2"]);
    assert_eq!(r.value("constant"), 1.0);
}

#[test]
fn gabor_wrong_candidate_fails_both_criteria() {
    let fx = Fixtures::new("cyclic:1");
    let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(2);
    let w = fx.path("w.json");
    let c = fx.path("c.json");
    io::write_json(
        &w,
        &io::window_file(12, 3, 2, &frametrace_core::sample::vector(&mut rng, 12)),
    )
    .unwrap();
    io::write_json(
        &c,
        &io::window_file(12, 3, 2, &frametrace_core::sample::vector(&mut rng, 12)),
    )
    .unwrap();
    let r = frametrace(&["gabor", "wexler-raz", "--window", s(&w), "--candidate", s(&c)]);
    assert_eq!(r.code, 1);
    assert_eq!(r.check("wexler-raz")["pass"], false);
    assert_eq!(r.check("reconstruction")["pass"], false);
    assert_eq!(r.check("criteria-agree")["pass"], true);

    // flags must agree with the window file
    let r = frametrace(&["gabor", "dual", "--L", "8", "--window", s(&w)]);
    assert_eq!(r.code, 2);
    let odd = fx.path("odd.json");
    io::write_json(
        &odd,
        &io::window_file(12, 2, 3, &frametrace_core::sample::vector(&mut rng, 12)),
    )
    .unwrap();
    let r = frametrace(&["gabor", "wexler-raz", "--window", s(&w), "--candidate", s(&odd)]);
    assert_eq!(r.code, 2);
}

#[test]
fn gabor_dual_below_critical_density_is_not_a_frame() {
    let r = frametrace(&["gabor", "dual", "--L", "4", "--a", "2", "--b", "4"]);
    assert_eq!(r.code, 1);
    assert_eq!(r.check("frame-window")["residual"], serde_json::Value::Null);
    assert!(r.value("error").as_str().unwrap().starts_with("NotAFrame"));
}

#[test]
fn gabor_bridge() {
    let r = frametrace(&["gabor", "bridge", "--L", "12", "--a", "3", "--b", "2", "--seed", "4"]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.value("wh_order"), 48);
    assert!(r.check("wh-bridge")["residual"].as_f64().unwrap() <= 1e-9);
}

#[test]
fn tolerance_from_env_and_flag() {
    let args = ["gabor", "wexler-raz", "--L", "12", "--a", "3", "--b", "2"];
    let r = frametrace_env(&args, Some("1e-30"));
    assert_eq!(r.code, 1);
    assert_eq!(r.value("tol"), 1e-30);
    let mut with_flag = args.to_vec();
    with_flag.extend(["--tol", "1e-9"]);
    let r = frametrace_env(&with_flag, Some("1e-30"));
    assert_eq!(r.code, 0);
    assert_eq!(frametrace_env(&args, Some("tiny")).code, 2);
}

#[test]
fn out_flag_and_determinism() {
    let fx = Fixtures::new("cyclic:1");
    let (p, q) = (fx.path("a.json"), fx.path("b.json"));
    let args = |out: &std::path::Path| -> Vec<String> {
        [
            "--seed",
            "17",
            "group",
            "--builtin",
            "heisenberg:3",
            "analyze",
            "--out",
            s(out),
        ]
        .iter()
        .map(|x| x.to_string())
        .collect()
    };
    let a: Vec<String> = args(&p);
    let r = frametrace(&a.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(r.code, 0);
    assert!(r.stdout.is_empty());
    let b: Vec<String> = args(&q);
    frametrace(&b.iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(std::fs::read(&p).unwrap(), std::fs::read(&q).unwrap());

    let r1 = frametrace(&["--seed", "1", "gabor", "dual", "--L", "12", "--a", "3", "--b", "2"]);
    let r2 = frametrace(&["--seed", "2", "gabor", "dual", "--L", "12", "--a", "3", "--b", "2"]);
    assert_ne!(r1.stdout, r2.stdout);
}

#[test]
fn help_and_version_exit_0() {
    assert_eq!(frametrace(&["--help"]).code, 0);
    assert_eq!(frametrace(&["--version"]).code, 0);
    assert_eq!(frametrace(&["gabor", "--help"]).code, 0);
}
