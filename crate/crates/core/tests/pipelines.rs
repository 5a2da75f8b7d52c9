use fano_core::fano::{
    expected_count, lines_through_random, random_pointed_hypersurface, sigma_system, AnalysisOptions,
};
use fano_core::idealkit::{rational_points_with, CheckStatus, PointOptions, Strategy};
use fano_core::voisin::{nodes, normal_form_cubic, sigma_y_system, voisin_demo, DemoOptions};
use fano_core::{Error, Field};

#[test]
fn quadric_surface_lines_match_scan() {
    // two lines through each point of a smooth quadric surface
    let f = Field::prime(13).unwrap();
    let rep = lines_through_random(3, 2, 1, &f, 2, &AnalysisOptions::default()).unwrap();
    assert_eq!(rep.verdict, "pass");
    let ph = random_pointed_hypersurface(3, 2, 1, &f, 2).unwrap();
    let ideal = sigma_system(&ph).unwrap().ideal();
    let scanned =
        rational_points_with(&ideal, PointOptions { k_max: 2, strategy: Strategy::Exhaustive, ..Default::default() })
            .unwrap();
    assert_eq!(scanned.count(), 2);
}

#[test]
fn counts_follow_factorials() {
    assert_eq!(expected_count(3, 2), 6);
    assert_eq!(expected_count(3, 1), 6);
    assert_eq!(expected_count(5, 4), 20);
}

#[test]
fn reports_are_deterministic() {
    let f = Field::prime(10007).unwrap();
    let a = lines_through_random(4, 3, 1, &f, 11, &AnalysisOptions::default()).unwrap();
    let b = lines_through_random(4, 3, 1, &f, 11, &AnalysisOptions::default()).unwrap();
    assert_eq!(a.to_json(), b.to_json());
    let a = voisin_demo(2, &f, 11, &DemoOptions::default()).unwrap();
    let b = voisin_demo(2, &f, 11, &DemoOptions::default()).unwrap();
    assert_eq!(a.to_json(), b.to_json());
}

#[test]
fn invalid_parameters_are_rejected() {
    let f = Field::prime(10007).unwrap();
    for (n, d, m) in [(3, 5, 2), (1, 1, 1), (3, 2, 3), (3, 2, 0)] {
        assert!(matches!(
            lines_through_random(n, d, m, &f, 0, &AnalysisOptions::default()),
            Err(Error::InvalidParameters(_))
        ));
    }
    let f5 = Field::prime(5).unwrap();
    assert!(matches!(
        random_pointed_hypersurface(3, 5, 2, &f5, 0),
        Err(Error::InvalidParameters(_))
    ));
}

#[test]
fn sigma_y_at_each_node_has_the_same_invariants() {
    let f = Field::prime(10007).unwrap();
    let nfc = normal_form_cubic(2, &f, 21).unwrap();
    for node in nodes(&nfc).unwrap() {
        let ideal = sigma_y_system(&nfc, &node).unwrap();
        let hd = fano_core::idealkit::hilbert_data(&ideal).unwrap();
        assert_eq!((hd.dimension, hd.degree), (2, 6));
    }
}

#[test]
fn eight_nodes_for_r3() {
    let f = Field::prime(10007).unwrap();
    let rep = voisin_demo(3, &f, 0, &DemoOptions { jacobian_degree: false, ..Default::default() }).unwrap();
    assert_eq!(rep.certificates.len(), 8);
    assert!(rep.checks.iter().all(|c| c.status == CheckStatus::Match), "{}", rep.to_json());
}
