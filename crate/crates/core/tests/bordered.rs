use curve_towers::bordered::{double_pipeline, require_bordered, DoubleConfig};
use curve_towers::certificate::{validate_certificate, Certificate};
use curve_towers::corpus::{example, punctured_torus, three_holed_sphere};
use curve_towers::nilpotent::{free_basis, lcs_degree, LcsDepth};

#[test]
fn bordered_pairs_go_through_the_double() {
    for ex in [punctured_torus().unwrap(), three_holed_sphere().unwrap()] {
        let t = &ex.triple;
        require_bordered(t).unwrap();
        let run = double_pipeline(Some(ex.name), t, &DoubleConfig::default()).unwrap();
        assert!(run.all_checks(), "{}: {:?} {:?}", ex.name, run.checks, run.notes);
        assert_eq!(run.double_genus, 2 * run.genus + run.boundary as i64 - 1);
        assert_eq!(run.n, t.n());
        assert_eq!(run.rank as i64, 1 - t.surface.euler_characteristic());
        // the depth is recomputed from the witness independently of the run
        let basis = free_basis(&t.surface).unwrap();
        let word = basis.word_of(&t.witness_word());
        assert_eq!(run.witness, word.to_string());
        let d = lcs_degree(&word, basis.rank, 8).unwrap();
        assert_eq!(run.depth, Some(d));
        if let LcsDepth::Exact(d) = d {
            assert!(d as u64 <= ((1u64 << run.certificate.k) - 2).max(1));
        }
        let chain = run.chain.as_ref().unwrap();
        assert!(chain.holds());
        // the certificate of the doubled pair re-validates on its own
        let back = Certificate::parse(&run.certificate.to_text()).unwrap();
        assert!(validate_certificate(&back).unwrap().holds());
    }
}

#[test]
fn closed_surfaces_are_not_doubled() {
    let t = example("g2-n2").unwrap().triple;
    assert!(require_bordered(&t).is_err());
    assert!(double_pipeline(None, &t, &DoubleConfig::default()).is_err());
}
