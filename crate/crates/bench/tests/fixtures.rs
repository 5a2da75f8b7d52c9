use fano_bench::{cubic, line_scheme, LINE_CASES};
use fano_core::idealkit::hilbert_data;
use fano_core::voisin::nodes;

#[test]
fn line_cases_are_finite_with_factorial_degree() {
    for (n, d, m) in LINE_CASES {
        let hd = hilbert_data(&line_scheme(10007, n, d, m)).unwrap();
        assert_eq!(hd.dimension, 0);
        assert_eq!(hd.degree, (m..=d).map(u128::from).product::<u128>());
    }
}

#[test]
fn benchmarked_cubic_has_four_nodes() {
    assert_eq!(nodes(&cubic(2)).unwrap().len(), 4);
}
