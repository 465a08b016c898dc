use gnd_algebra::parse::{parse_poly, parse_poly_list};
use gnd_algebra::{BlockRole, Ideal, Ring, RingRef, TermOrder};

fn setup() -> (RingRef, Ideal, Ideal, TermOrder) {
    let r = Ring::with_names(&["Y1", "Y2", "T1", "T2", "x"], BlockRole::Base);
    let before = parse_poly_list(&r, "Y1*Y2 - x^2, Y1 - x - x*T1 + x^2*T2, Y2 - x - x^2*T2").unwrap();
    let shown = parse_poly_list(
        &r,
        "x*T1*T2 - x^2*T2^2 + T1, Y1 - x - x*T1 + x^2*T2, Y2 - x - x^2*T2",
    )
    .unwrap();
    let order = TermOrder::mixed(5, &[0, 1, 2, 3]);
    (r.clone(), Ideal::new(&r, before), Ideal::new(&r, shown), order)
}

#[test]
fn colon_by_square_matches_displayed_ideal_locally() {
    let (r, before, shown, order) = setup();
    let x2 = parse_poly(&r, "x^2").unwrap();
    let colon = before.quotient_poly(&x2);
    assert!(colon.contains_ideal(&shown, &order));
    assert!(shown.contains_ideal(&colon, &order));
}

#[test]
fn displayed_generator_times_square_lies_in_original() {
    let (r, before, _, order) = setup();
    let g = parse_poly(&r, "x^3*T1*T2 - x^4*T2^2 + x^2*T1").unwrap();
    let w = before.lift(&g, &order).unwrap();
    assert!(w.verify(&g));
    assert!(!before.contains(&parse_poly(&r, "x*T1*T2 - x^2*T2^2 + T1").unwrap(), &order));
}
