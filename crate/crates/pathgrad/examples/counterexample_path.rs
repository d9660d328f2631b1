//! A quadratic sign-corrected path that shares every axiom-relevant
//! property with the straight line — same endpoints, strictly monotone
//! coordinates — yet produces different attributions, showing the straight
//! line is a choice, not a consequence.

use pathgrad::{
    check_monotonic, integrated_gradients, make_counterexample, make_straight, QuadratureSpec,
    Rule, ScalarField,
};

fn main() {
    let p = [0.0, 0.5];
    let q = [1.0, 1.5];
    let bent = make_counterexample(&p, &q).unwrap();

    let mono = check_monotonic(&bent, 1001);
    println!("p = {p:?}, q = {q:?}");
    println!("bent path directions: {:?}", mono.directions);
    let mid = bent.eval(0.5).unwrap();
    println!(
        "midpoint: bent ({:.4}, {:.4}) vs straight (0.5, 1.0)\n",
        mid[0], mid[1]
    );

    // when the two displacements are equal the bent path retraces the same
    // chord at a different speed, and attributions are parametrization
    // invariant; unequal displacements bend the curve itself off the chord
    let p = [0.0, 0.2];
    let q = [1.5, 1.6];
    let bent = make_counterexample(&p, &q).unwrap();
    let straight = make_straight(&p, &q).unwrap();
    println!("attribution comparison for p = {p:?}, q = {q:?}:");
    let field = ScalarField::bilinear_product();
    let quad = QuadratureSpec::new(Rule::GaussLegendre, 64).unwrap();
    for (name, path) in [("straight", &straight), ("bent", &bent)] {
        let report = integrated_gradients(&field, path, &quad).unwrap();
        println!(
            "{name:9} IG = ({:+.6}, {:+.6})  sum = {:.6}",
            report.attributions[0], report.attributions[1], report.sum
        );
    }
    println!("\nsame endpoints, same sum, different split");

    // when the bend coefficient exceeds the displacement, monotonicity breaks
    let wild = make_counterexample(&[0.0, 1.0], &[1.0, 3.0]).unwrap();
    let mono = check_monotonic(&wild, 1001);
    println!(
        "\np = (0,1), q = (1,3): coefficient 5 > |q1 - p1| = 1, directions {:?}",
        mono.directions
    );
}
