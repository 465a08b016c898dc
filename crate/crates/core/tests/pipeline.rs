use gnd_algebra::parse::parse_poly;
use gnd_core::desing::{desingularize, desingularize_traced, DesingOptions};
use gnd_core::greenberg::{newton_lift, setup, tangent_system, LiftingProblem};
use gnd_core::problem::{parse_problem, Problem};
use gnd_core::trace::Trace;
use gnd_core::GndError;

fn load(name: &str) -> Problem {
    let path = format!("{}/../../problems/{name}", env!("CARGO_MANIFEST_DIR"));
    parse_problem(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn strings(ps: &[gnd_algebra::Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

#[test]
fn shipped_problems_round_trip() {
    for name in ["two_axes.gnd", "two_axes_n4.gnd", "hyperbola.gnd", "space_curve.gnd", "cusp.gnd"] {
        let p = load(name);
        let text = p.to_text();
        let back = parse_problem(&text).unwrap();
        assert_eq!(back.to_text(), text, "{name}");
    }
}

#[test]
fn two_axes_is_certified_and_deterministic() {
    let p = load("two_axes.gnd");
    let opts = DesingOptions::from_problem(&p);
    let r = desingularize(&p, &opts).unwrap();
    assert!(r.output.report.all_pass(), "{:?}", r.output.report.failures());
    assert_eq!(r.trace.records.len(), 19);
    let again = desingularize(&p, &opts).unwrap();
    assert_eq!(again.trace.to_text(), r.trace.to_text());
    assert_eq!(strings(&again.output.simplified), strings(&r.output.simplified));
}

#[test]
fn small_precision_stops_at_line_twelve() {
    let p = load("two_axes_n4.gnd");
    let mut trace = Trace::default();
    let err = desingularize_traced(&p, &DesingOptions::from_problem(&p), &mut trace).err().unwrap();
    assert!(matches!(err, GndError::BoundTooSmall));
    assert_eq!(err.to_string(), "the algorithm fails since the bound N is too small");
    assert_eq!(trace.records.last().unwrap().line, 12);
}

#[test]
fn hyperbola_output_is_certified() {
    let p = load("hyperbola.gnd");
    let r = desingularize(&p, &DesingOptions::from_problem(&p)).unwrap();
    assert!(r.output.report.all_pass());
    let f = r.factorization.as_ref().expect("verify jets are given");
    assert!(f.all_pass());
    assert_eq!(r.certificate.e, 1);
    assert_eq!(r.certificate.d.to_string(), "x^2");
}

#[test]
fn dimension_one_branch_reaches_line_twelve() {
    let p = load("cusp.gnd");
    let mut trace = Trace::default();
    let err = desingularize_traced(&p, &DesingOptions::from_problem(&p), &mut trace).err().unwrap();
    assert!(matches!(err, GndError::BoundTooSmall));
    let lines: Vec<u32> = trace.records.iter().map(|r| r.line).collect();
    assert_eq!(lines, (1..=12).collect::<Vec<_>>());
    let nine = trace.line(9).unwrap();
    assert!(nine.get("adjoined").is_some());
    assert!(nine.get("d′").is_some());
    let ten = trace.line(10).unwrap().to_string();
    assert!(ten.contains("d = x^6"), "{ten}");
}

fn two_axes_lift(rho: u32, c: u32, target: u32) -> LiftingProblem {
    let p = load("two_axes.gnd");
    let mut prob = LiftingProblem::from_problem(&p, &[], rho, c, target).unwrap();
    let ring = prob.algebra.ring.clone();
    prob.f = vec![parse_poly(&ring, "x2*Y1 + x1*Y2").unwrap()];
    prob
}

#[test]
fn tangent_system_matches_the_certificate() {
    let p = load("two_axes.gnd");
    let r = desingularize(&p, &DesingOptions::from_problem(&p)).unwrap();
    let prob = two_axes_lift(4, 8, 12);
    let s = setup(&prob).unwrap();
    let j = prob.local.relations();
    let d_core = r.certificate.d.embed(prob.local.ring()).unwrap();
    assert!(j.contains(&(&s.d - &d_core), &prob.local.global_order()));
    assert_eq!(s.e as usize, r.certificate.e);
    let (_, h, g) = tangent_system(&prob, &s).unwrap();
    assert_eq!(strings(&h), strings(&r.certificate.h));
    assert_eq!(strings(&g), strings(&r.certificate.g));
}

#[test]
fn lifting_on_the_two_axes() {
    let prob = two_axes_lift(4, 8, 16);
    let rep = newton_lift(&prob).unwrap();
    assert_eq!(rep.nu, 18);
    assert!(rep.agreement >= 8);
    let ctx = gnd_core::jet::JetContext::new(prob.local.ring(), vec![0, 1], prob.local.relations().gens().to_vec());
    let values: Vec<(String, gnd_core::jet::Jet)> = prob.algebra.unknown_names().into_iter().zip(rep.y.clone()).collect();
    for g in &prob.algebra.relations {
        assert!(ctx.is_zero(&ctx.eval(g, &values, 16)), "{g}");
    }
}
