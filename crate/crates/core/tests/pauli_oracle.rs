mod common;

use common::{approx_eq, i_pow, matmul, matrix, mismatches, scale};
use veldkamp::pauli::{mul_signed, PauliElement, SignedPauli};

#[test]
fn two_qubit_products_match_matrices() {
    assert_eq!(mismatches(2), (225, 0));
}

#[test]
fn three_qubit_products_match_matrices() {
    assert_eq!(mismatches(3), (3969, 0));
}

#[test]
fn phases_compose_with_signed_inputs() {
    let a: PauliElement = "XZ".parse().unwrap();
    let b: PauliElement = "YY".parse().unwrap();
    for (pa, pb) in [(1, 0), (2, 3), (3, 3)] {
        let p = mul_signed(&SignedPauli::new(a, pa), &SignedPauli::new(b, pb)).unwrap();
        let want = matmul(&scale(&matrix(&a), i_pow(pa)), &scale(&matrix(&b), i_pow(pb)));
        assert!(approx_eq(&want, &scale(&matrix(&p.element), i_pow(p.phase_exponent()))));
    }
}
