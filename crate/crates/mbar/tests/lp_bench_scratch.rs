use mbar::arith::rat_int;
use mbar::classes::{ClassVector, MarkingSet};
use mbar::fcone::{lp_decompose, DecompOutcome};

#[test]
fn bench_n9_g_class() {
    let ms = MarkingSet::new(&["1", "2", "3", "4", "6", "9", "u", "v", "x"]).unwrap();
    let mut g = ClassVector::zero(&ms);
    for (side, v) in [
        (vec!["2", "4", "6", "u"], 1),
        (vec!["1", "2", "3", "u", "v"], 1),
        (vec!["1", "6", "v"], 1),
        (vec!["1", "4", "v"], 1),
        (vec!["3", "4"], 1),
        (vec!["3", "6"], 1),
        (vec!["1", "v"], -2),
        (vec!["2", "u"], -1),
        (vec!["9", "x"], -1),
    ] {
        g.add_at(&side, rat_int(v)).unwrap();
    }
    let t0 = std::time::Instant::now();
    match lp_decompose(&g, 10).unwrap() {
        DecompOutcome::Certificate(cert) => {
            eprintln!("feasible, {} terms, {:?}", cert.terms.len(), t0.elapsed());
        }
        DecompOutcome::Infeasible(_) => panic!("G must be a sum of F-curves"),
    }
}
