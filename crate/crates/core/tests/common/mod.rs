//! Dense complex-matrix model of the Pauli group, independent of the
//! bit-vector implementation.

#![allow(dead_code)]

use num_complex::Complex64;
use veldkamp::pauli::{mul_signed, symplectic_form, PauliElement, SignedPauli};

pub type Matrix = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn single(letter: char) -> Matrix {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match letter {
        'I' => vec![vec![o, z], vec![z, o]],
        'X' => vec![vec![z, o], vec![o, z]],
        'Y' => vec![vec![z, c(0.0, -1.0)], vec![c(0.0, 1.0), z]],
        'Z' => vec![vec![o, z], vec![z, -o]],
        _ => panic!("not a Pauli letter: {letter}"),
    }
}

pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn scale(a: &Matrix, s: Complex64) -> Matrix {
    a.iter().map(|r| r.iter().map(|x| x * s).collect()).collect()
}

/// Matrix of a string like "XYZ" (leftmost letter = leftmost tensor factor).
pub fn matrix_of(text: &str) -> Matrix {
    text.chars().map(single).reduce(|acc, m| kron(&acc, &m)).expect("nonempty")
}

pub fn matrix(e: &PauliElement) -> Matrix {
    matrix_of(&e.to_string())
}

pub fn i_pow(k: u8) -> Complex64 {
    [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][(k & 3) as usize]
}

pub fn approx_eq(a: &Matrix, b: &Matrix) -> bool {
    a.iter().flatten().zip(b.iter().flatten()).all(|(x, y)| (x - y).norm() < 1e-12)
}

pub fn identity(dim: usize) -> Matrix {
    (0..dim).map(|i| (0..dim).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect()).collect()
}

/// `Some(±1)` when the ordered product of the three matrices is ±identity.
pub fn context_sign(ops: &[PauliElement; 3]) -> Option<i8> {
    let m = matmul(&matmul(&matrix(&ops[0]), &matrix(&ops[1])), &matrix(&ops[2]));
    let id = identity(m.len());
    if approx_eq(&m, &id) {
        Some(1)
    } else if approx_eq(&m, &scale(&id, c(-1.0, 0.0))) {
        Some(-1)
    } else {
        None
    }
}

/// Every N-qubit string, identity included.
pub fn all_strings(n: usize) -> Vec<String> {
    let mut out = vec![String::new()];
    for _ in 0..n {
        out = out.into_iter().flat_map(|s| ['I', 'X', 'Y', 'Z'].map(|l| format!("{s}{l}"))).collect();
    }
    out
}

/// Six contexts of a grid: rows then columns.
pub fn oracle_signs(labels: &[[PauliElement; 3]; 3]) -> Vec<Option<i8>> {
    let rows = (0..3).map(|i| context_sign(&labels[i]));
    let cols = (0..3).map(|j| context_sign(&[labels[0][j], labels[1][j], labels[2][j]]));
    rows.chain(cols).collect()
}

/// Ordered pairs of non-identity elements checked, and how many disagree.
pub fn mismatches(n: usize) -> (usize, usize) {
    let elems: Vec<PauliElement> =
        all_strings(n).iter().map(|s| s.parse().unwrap()).filter(|e: &PauliElement| !e.is_identity()).collect();
    let mats: Vec<_> = elems.iter().map(matrix).collect();
    let (mut pairs, mut bad) = (0, 0);
    for (a, ma) in elems.iter().zip(&mats) {
        for (b, mb) in elems.iter().zip(&mats) {
            pairs += 1;
            let ab = matmul(ma, mb);
            let p = mul_signed(&SignedPauli::hermitian(*a), &SignedPauli::hermitian(*b)).unwrap();
            let predicted = scale(&matrix(&p.element), i_pow(p.phase_exponent()));
            let commute = approx_eq(&ab, &matmul(mb, ma));
            let form = symplectic_form(a, b).unwrap();
            if !approx_eq(&ab, &predicted) || commute != (form == 0) {
                bad += 1;
            }
        }
    }
    (pairs, bad)
}
