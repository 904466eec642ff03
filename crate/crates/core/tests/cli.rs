mod common;

use std::process::Command;

use clap::Parser;
use common::pushforward_fixture;
use orient::algebra::json::from_json;
use orient::cli::{build, execute, Cli, Expression, Space};
use orient::fgl::{Specialization, Theory};
use orient::symbolic::parse_poly;
use serde_json::Value;

fn out(args: &[&str]) -> String {
    let cli = Cli::try_parse_from(std::iter::once("orient").chain(args.iter().copied())).unwrap();
    let o = execute(&cli).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    assert!(o.pass, "{args:?}");
    o.output
}

fn binary(args: &[&str]) -> (i32, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_orient")).args(args).output().unwrap();
    (o.status.code().unwrap(), String::from_utf8(o.stdout).unwrap())
}

#[test]
fn eval_counts() {
    assert_eq!(out(&["eval", "blc-p3", "fadd(nser(4,alpha), chi(nser(2,e)))^2 * alpha"]), "4*alpha^3\n");
    assert_eq!(out(&["eval", "blv-p5", "fadd(nser(6,alpha), chi(nser(2,e00)))^5"]), "3264*alpha^5\n");
    assert_eq!(out(&["eval", "p5", "nser(6,h)^5"]), "7776*h^5\n");
    for sp in ["point", "p2", "dp3", "blc-p3", "m0n5"] {
        assert_eq!(out(&["eval", sp, "1"]), "1\n", "{sp}");
    }
}

#[test]
fn eval_json_reparses() {
    let text = out(&["--emit", "json", "eval", "blc-p3", "nser(2, e)"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    let built = build(Space::TwistedCubic, &Theory::Universal, false).unwrap();
    let strings: Vec<String> = v["element"].as_array().unwrap().iter().map(|s| s.as_str().unwrap().to_string()).collect();
    let e = orient::algebra::json::parse_element(&strings, built.algebra.rank()).unwrap();
    let alg = &built.algebra;
    let want = Expression::parse("nser(2, e)").unwrap().eval(alg).unwrap();
    assert_eq!(e, want);
    assert_eq!(Expression::parse(v["expression"].as_str().unwrap()).unwrap(), Expression::parse("nser(2,e)").unwrap());
}

#[test]
fn catalog_json_round_trips() {
    for (sp, name) in [
        (Space::TwistedCubic, "blc-p3"),
        (Space::DelPezzo(3), "dp"),
        (Space::M0n(5), "m0n"),
    ] {
        let mut args = vec!["--emit", "json", "catalog", name];
        let k;
        match sp {
            Space::DelPezzo(n) | Space::M0n(n) => {
                k = n.to_string();
                args.push(&k);
            }
            _ => {}
        }
        let v: Value = serde_json::from_str(&out(&args)).unwrap();
        let alg = from_json(&v["algebra"]).unwrap();
        let built = build(sp, &Theory::Universal, false).unwrap();
        assert_eq!(alg, *built.algebra, "{name}");
    }
}

#[test]
fn chow_is_universal_with_zero_coefficients() {
    let v: Value = serde_json::from_str(&out(&["--theory", "chow", "--emit", "json", "catalog", "blc-p3"])).unwrap();
    let chow = from_json(&v["algebra"]).unwrap();
    let universal = build(Space::TwistedCubic, &Theory::Universal, false).unwrap();
    let specialized = universal.algebra.specialize(&Specialization::chow()).unwrap();
    assert_eq!(chow.packed_table(), specialized.packed_table());
    assert_eq!(chow.basis(), specialized.basis());
}

#[test]
fn pushforward_table_json() {
    let v: Value = serde_json::from_str(&out(&["--emit", "json", "table", "blv-p5", "--pushforward"])).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 9);
    let fixture = pushforward_fixture();
    let ctx = common::exceptional_symbols()
        .iter()
        .fold(orient::symbolic::VarContext::new(), |c, (n, d)| c.with(n, *d));
    for (r, row) in v["entries"].as_array().unwrap().iter().enumerate() {
        for (c, cell) in row.as_array().unwrap().iter().enumerate() {
            let p = parse_poly(cell.as_str().unwrap(), &ctx).unwrap();
            assert_eq!(p, fixture[r][c], "({r}, {c})");
        }
    }
    let text = out(&["table", "blv-p5", "--pushforward"]);
    assert!(text.contains("e01 * e02 = -51*e22"), "{text}");
}

#[test]
fn tables() {
    let dp = out(&["table", "dp4", "--classes", "h,e1,e2"]);
    assert!(dp.contains("e1 * e1 = -h^2"));
    assert!(dp.contains("e1 * e2 = 0"));
    assert_eq!(out(&["table", "point"]), "1 * 1 = 1\n");
}

#[test]
fn presentations() {
    let text = out(&["presentation", "blc-p3"]);
    assert!(text.contains("z + e^2 + 10*a11*alpha^3,"), "{text}");
    assert!(text.contains("e*x + alpha^3,"), "{text}");
    let v: Value = serde_json::from_str(&out(&["--emit", "json", "presentation", "dp2"])).unwrap();
    assert!(v.is_object());
}

#[test]
fn fgl_commands() {
    assert_eq!(out(&["fgl", "nseries", "2", "--truncate", "3"]), "[2](u) = 2*u + a11*u^2 + 2*a12*u^3\n");
    assert_eq!(
        out(&["--theory", "ktheory", "fgl", "omega", "--truncate", "2"]),
        "omega_0 = 1\nomega_1 = b\nomega_2 = b^2\n"
    );
    assert_eq!(out(&["--theory", "chow", "fgl", "inverse"]), "chi(u) = -u\n");
}

#[test]
fn demos_pass() {
    for d in ["secants", "steiner", "m05-iso", "naive-fail"] {
        let (code, text) = binary(&["demo", d]);
        assert_eq!(code, 0, "{d}: {text}");
        assert!(text.contains("pass"), "{text}");
    }
    let (_, text) = binary(&["--emit", "json", "demo", "secants"]);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["values"]["count"], "4");
}

#[test]
fn exit_codes() {
    assert_eq!(binary(&["eval", "p3", "foo"]).0, 2);
    assert_eq!(binary(&["eval", "p3", "h +"]).0, 2);
    assert_eq!(binary(&["catalog", "dp", "9"]).0, 2);
    assert_eq!(binary(&["--theory", "bogus", "eval", "p2", "h"]).0, 2);
    assert_eq!(binary(&["table", "p2", "--pushforward"]).0, 2);
    assert_eq!(binary(&["nonsense"]).0, 2);
    assert_eq!(binary(&["eval", "p2", "h^2"]), (0, "h^2\n".to_string()));
}

#[test]
fn writes_to_a_file() {
    let dir = std::env::temp_dir().join(format!("orient-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("out.txt");
    let (code, stdout) = binary(&["--out", path.to_str().unwrap(), "eval", "p2", "3*h"]);
    assert_eq!((code, stdout.as_str()), (0, ""));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "3*h\n");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn spaces_parse_and_print() {
    for s in ["point", "p4", "p1xp1", "dp5", "blc-p3", "blv-p5", "m0n6"] {
        let sp: Space = s.parse().unwrap();
        assert_eq!(sp.to_string(), s);
    }
    assert!("q3".parse::<Space>().is_err());
}
