use assert_cmd::Command;

const F: &str = "1/3*x^3 - t^2*x*y^10 + y^12";
const G: &str = "x^3 + y^12 + x*y^9 + t*y^13";

fn canyonlab() -> Command {
    Command::cargo_bin("canyonlab").unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = canyonlab().args(args).assert().success();
    String::from_utf8(out.get_output().stdout.clone()).unwrap()
}

#[test]
fn compare_f1_f2_golden() {
    canyonlab()
        .args(["compare", "1/3*x^3 - x*y^10 + y^12", "1/3*x^3 - 4*x*y^10 + y^12"])
        .assert()
        .success()
        .stdout("{\"verdict\":\"not_equivalent\",\"route\":\"scale_constraints\",\"matchings\":2}\n");
}

#[test]
fn compare_g1_g2_golden() {
    canyonlab()
        .args(["compare", G, G, "--bind", "t=1"])
        .assert()
        .success()
        .stdout("{\"verdict\":\"inconclusive\",\"route\":null,\"matchings\":2}\n");
    canyonlab()
        .args(["compare", "x^3 + y^12 + x*y^9 + y^13", "x^3 + y^12 + x*y^9 + 2*y^13"])
        .assert()
        .success()
        .stdout("{\"verdict\":\"not_equivalent\",\"route\":\"refined_check\",\"matchings\":2}\n");
}

#[test]
fn compare_f1_with_itself() {
    let s = stdout(&["compare", F, F, "--bind", "t=1"]);
    assert!(s.starts_with("{\"verdict\":\"inconclusive\""), "{s}");
}

#[test]
fn certificate_carries_the_development() {
    let s = stdout(&["compare", "x^3 + y^12 + x*y^9 + y^13", "x^3 + y^12 + x*y^9 + 2*y^13", "--certificate"]);
    assert!(s.contains("\"kind\":\"refuted\""));
    assert!(s.contains("\"exponent\":\"29/2\""));
    assert!(s.contains("[\"2\",{\"re\":\"-1/12\""), "{s}");
}

#[test]
fn card_f1_contains_second_level() {
    let s = stdout(&["card", F, "--bind", "t=1"]);
    assert!(s.contains("\"H\":\"15\""));
    assert!(s.contains("\"diff\":{\"re\":\"-4/3\",\"im\":\"0\",\"rad\":\"0\"}"));
}

#[test]
fn card_g1_degree() {
    let s = stdout(&["card", G, "--bind", "t=1"]);
    assert!(s.contains("\"d\":\"13/2\""));
}

#[test]
fn smooth_germ_golden() {
    canyonlab().args(["card", "y"]).assert().success().stdout(concat!(
        r#"{"germ":"y","regularized":"x + y","shear":"1","trunc":"3","precision_bits":256,"#,
        r#""zero_tol":"2.938735877055719e-39","tangent_cone":[{"slope":{"re":"-1","im":"0","rad":"0"},"multiplicity":1}],"#,
        r#""polars":[],"kuo_lu":{"roots":[[{"text":"-y","terms":[{"e":"1","c":{"re":"-1","im":"0","rad":"0"}}],"trunc":"inf"},1]],"#,
        r#""bars":[{"id":0,"height":"1","roots":[0],"parent":null,"children":[]}]},"#,
        r#""canyons":[],"clusters":[],"lines":[],"second_level":[],"third_level":[]}"#,
        "\n"
    ));
}

#[test]
fn output_is_byte_identical() {
    let args = ["card", G, "--bind", "t=2", "--pretty"];
    assert_eq!(stdout(&args), stdout(&args));
}

#[test]
fn sweep_f_family() {
    let s = stdout(&["sweep", F, "--param", "t", "--values", "1,2,3"]);
    assert_eq!(s.matches("\"verdict\":\"not_equivalent\"").count(), 3);
    assert!(s.ends_with("\"classes\":[[0],[1],[2]]}\n"));
}

#[test]
fn sweep_g_family_and_single_value() {
    let s = stdout(&["sweep", G, "--param", "t", "--values", "0,1"]);
    assert!(s.contains("\"verdict\":\"not_equivalent\",\"route\":\"refined_check\""));
    let s = stdout(&["sweep", G, "--param", "t", "--values", "1"]);
    assert!(s.ends_with("\"pairs\":[],\"classes\":[[0]]}\n"));
}

#[test]
fn parse_error_exit_code() {
    canyonlab()
        .args(["card", "x + + y"])
        .assert()
        .code(3)
        .stdout("")
        .stderr("{\"error\":\"parse\",\"message\":\"parse error at offset 4: unexpected '+'\",\"offset\":4}\n");
    canyonlab().args(["card", F]).assert().code(3);
}

#[test]
fn computation_error_exit_code() {
    canyonlab()
        .args(["card", F, "--bind", "t=1", "--trunc", "3"])
        .assert()
        .code(2)
        .stderr(predicates::str::contains("\"error\":\"computation\""));
}
