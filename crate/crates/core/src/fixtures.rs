//! Small example algebras and pairs used by tests, benches and the CLI docs.

use crate::algebra::{LieDerPair, ThreeLieAlgebra};
use crate::linalg::LinearMap;
use crate::scalar::{int, Scalar};

fn basis_vec(n: usize, entries: &[(usize, i64)]) -> Vec<Scalar> {
    let mut v = vec![int(0); n];
    for &(i, c) in entries {
        v[i] = int(c);
    }
    v
}

pub fn diag(values: &[i64]) -> LinearMap {
    LinearMap::diagonal(&values.iter().map(|&v| int(v)).collect::<Vec<_>>())
}

/// `[e1, e2, e3] = e4`.
pub fn nilpotent4() -> ThreeLieAlgebra {
    ThreeLieAlgebra::new_unchecked(4, [([0, 1, 2], basis_vec(4, &[(3, 1)]))]).expect("well formed")
}

/// The simple 4-dimensional algebra `[e_i, e_j, e_k] = Σ_l ε_ijkl e_l`.
pub fn simple4() -> ThreeLieAlgebra {
    ThreeLieAlgebra::new_unchecked(
        4,
        [
            ([0, 1, 2], basis_vec(4, &[(3, 1)])),
            ([0, 1, 3], basis_vec(4, &[(2, -1)])),
            ([0, 2, 3], basis_vec(4, &[(1, 1)])),
            ([1, 2, 3], basis_vec(4, &[(0, -1)])),
        ],
    )
    .expect("well formed")
}

/// `[e1, e2, e3] = e1`.
pub fn solvable3() -> ThreeLieAlgebra {
    ThreeLieAlgebra::new_unchecked(3, [([0, 1, 2], basis_vec(3, &[(0, 1)]))]).expect("well formed")
}

/// `([e1,e2,e3] = e4, diag(1,1,1,3))`.
pub fn nilpotent4_pair() -> LieDerPair {
    LieDerPair::new(nilpotent4(), diag(&[1, 1, 1, 3])).expect("derivation")
}

/// `(simple4, E12 − E21)`, a rotation in the first two coordinates.
pub fn simple4_pair() -> LieDerPair {
    let phi = LinearMap::from_i64(4, 4, &[0, 1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
    LieDerPair::new(simple4(), phi).expect("derivation")
}

/// `(solvable3, E23)`.
pub fn solvable3_pair() -> LieDerPair {
    let phi = LinearMap::from_i64(3, 3, &[0, 0, 0, 0, 0, 1, 0, 0, 0]);
    LieDerPair::new(solvable3(), phi).expect("derivation")
}

/// Abelian algebra of dimension `n` with derivation `φ`.
pub fn abelian_pair(n: usize, phi: LinearMap) -> LieDerPair {
    LieDerPair::new(ThreeLieAlgebra::abelian(n), phi).expect("every map is a derivation")
}

/// Named pairs used across the test suites.
pub fn standard_pairs() -> Vec<(&'static str, LieDerPair)> {
    vec![
        ("abelian2", abelian_pair(2, LinearMap::zeros(2, 2))),
        ("abelian3", abelian_pair(3, diag(&[1, 0, 2]))),
        ("abelian4", abelian_pair(4, LinearMap::zeros(4, 4))),
        ("nilpotent4", nilpotent4_pair()),
        ("nilpotent4-zero", LieDerPair::with_zero_derivation(nilpotent4())),
    ]
}
