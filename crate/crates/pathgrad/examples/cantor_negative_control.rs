//! The Lipschitz hypothesis is not decorative. The Cantor staircase climbs
//! from 0 to 1 while its derivative is 0 almost everywhere, so the
//! integrated gradient misses (almost) the entire rise: the completeness
//! residual stays near 1 no matter how many nodes are spent.

use pathgrad::error::Error;
use pathgrad::{
    completeness_residual, integrated_gradients, make_straight, refine, QuadratureSpec,
    ScalarField,
};

fn main() {
    let field = ScalarField::cantor(24);
    let line = make_straight(&[0.0], &[1.0]).unwrap();

    println!("Cantor staircase (depth 24) on the straight path 0 -> 1:");
    for nodes in [64, 256, 1024, 4096] {
        let report =
            integrated_gradients(&field, &line, &QuadratureSpec::midpoint(nodes)).unwrap();
        println!(
            "  {nodes:5} nodes: IG_1 = {:.6}, residual = {:.6}",
            report.attributions[0],
            completeness_residual(&report)
        );
    }

    match refine(&field, &line, 1e-2, 65536) {
        Err(Error::NotConverged { outcome }) => println!(
            "\nrefinement gives up at {} nodes with residual {:.6} — the rise\n\
             happens on a measure-zero set the gradient never sees",
            outcome.report.total_nodes,
            completeness_residual(&outcome.report)
        ),
        other => println!("unexpected: {other:?}"),
    }
}
