use std::process::{Command, Output};

fn rbfam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbfam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn product_example_has_three_terms() {
    let o = rbfam(&["--omega", "free:a,b", "--weight", "1", "mul", "V([a]V(|,x,|))", "V([b]V(|,y,|))"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    for term in ["V([ab]V(|,x,|,y,|))", "V([ab]V(|,x,[b]V(|,y,|)))", "V([ab]V([a]V(|,x,|),y,|))"] {
        assert!(out.contains(term), "{out}");
    }
    assert_eq!(out.matches(" + ").count(), 2);
}

#[test]
fn weight_zero_drops_the_third_term() {
    let o = rbfam(&["--weight", "0", "mul", "V([a]V(|,x,|))", "V([b]V(|,y,|))"]);
    assert_eq!(stdout(&o).matches(" + ").count(), 1);
}

#[test]
fn negative_weight_is_accepted() {
    let o = rbfam(&["--weight", "-1/2", "mul", "V([a]V(|,x,|))", "V([b]V(|,y,|))"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1/2*V([ab]V(|,x,|,y,|))"));
}

#[test]
fn psi_rejects_adjacent_brackets() {
    let o = rbfam(&["psi", "[x]_a [y]_b"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not a Rota-Baxter family word"));
}

#[test]
fn phi_and_psi_invert() {
    let o = rbfam(&["phi", "V([a]V(|,x,|,y,|))"]);
    assert_eq!(stdout(&o).trim(), "[x y]_a");
    let o = rbfam(&["psi", "[x y]_a"]);
    assert_eq!(stdout(&o).trim(), "V([a]V(|,x,|,y,|))");
}

#[test]
fn strategies_agree() {
    let expr = "[x]_a [y]_b [z]_a";
    let base = stdout(&rbfam(&["--weight", "1", "nf", expr]));
    for s in ["leftmost", "rightmost", "random:9"] {
        assert_eq!(stdout(&rbfam(&["--weight", "1", "nf", "--strategy", s, expr])), base);
    }
    let o = rbfam(&["nf", "--strategy", "sideways", expr]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn step_budget_exhaustion_exits_one() {
    let o = Command::new(env!("CARGO_BIN_EXE_rbfam"))
        .args(["nf", "--strategy", "leftmost", "[x]_a [y]_b [z]_a"])
        .env("RBFAM_MAX_STEPS", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dendriform_and_tridendriform() {
    let o = rbfam(&["dend", "prec", "a", "V(|,x,|)", "V(|,y,|)"]);
    assert_eq!(stdout(&o).trim(), "V(|,x,[a]V(|,y,|))");
    let o = rbfam(&["dend", "succ", "a", "|", "V(|,y,|)"]);
    assert_eq!(stdout(&o).trim(), "V(|,y,|)");
    let o = rbfam(&["--weight", "1", "trid", "dot", "V(|,x,|)", "V(|,y,|)"]);
    assert_eq!(stdout(&o).trim(), "V(|,x,|,y,|)");
    let o = rbfam(&["--weight", "1", "trid", "dot", "a", "V(|,x,|)", "V(|,y,|)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn enumerate_binary_counts() {
    let o = rbfam(&["--omega", "cyclic:2", "enumerate", "--angles", "3", "--class", "binary"]);
    assert_eq!(stdout(&o).lines().count(), 20);
    let o = rbfam(&["--omega", "int", "enumerate", "--angles", "1", "--class", "binary"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn full_check_over_trivial_semigroup() {
    let o = rbfam(&["--omega", "trivial", "--weight", "0", "check", "--suite", "all"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert_eq!(stdout(&o).lines().count(), 10);
}

#[test]
fn parse_errors_exit_two() {
    let o = rbfam(&["mul", "V(|,x", "V(|,y,|)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!stderr(&o).is_empty());
    let o = rbfam(&["--omega", "cyclic:0", "mul", "V(|)", "V(|)"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn render_dot_has_one_cluster_per_term() {
    let o = rbfam(&["render", "--dot", "V(|,x,|) + 2*V([a]V(|))"]);
    let out = stdout(&o);
    assert!(out.starts_with("digraph"));
    assert_eq!(out.matches("subgraph").count(), 2);
}

#[test]
fn output_is_deterministic() {
    let args = ["--weight", "1", "mul", "V([a]V(|,x,|),y,|)", "V([b]V(|,y,|))"];
    assert_eq!(stdout(&rbfam(&args)), stdout(&rbfam(&args)));
}
