//! Small named examples used as fixtures and by the `catalog` command.

use crate::algebra::{ResLieDerPair, RestrictedLieAlgebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{unit_vector, zero_vector};

pub const NAMES: [&str; 5] = [
    "abelian1",
    "nonabelian2",
    "heisenberg3_zero",
    "heisenberg3_sq",
    "abelian_n",
];

/// Dimension used for `abelian_n` when none is given.
pub const DEFAULT_ABELIAN_DIM: usize = 2;

/// The abelian algebra of dimension `n` with zero 2-map.
pub fn abelian(field: &Field, n: usize) -> ResLieDerPair {
    ResLieDerPair::with_zero_derivation(RestrictedLieAlgebra::abelian(field, n))
}

/// Looks up a catalog entry (with zero derivation). `abelian_n` uses
/// [`DEFAULT_ABELIAN_DIM`]; `abelian_<n>` picks another dimension.
pub fn pair(name: &str, field: &Field) -> Result<ResLieDerPair> {
    let e = |n: usize, i: usize| unit_vector(n, i);
    let alg = match name {
        "abelian1" => RestrictedLieAlgebra::abelian(field, 1),
        // [e1, e2] = e2, e1^[2] = e1, e2^[2] = 0
        "nonabelian2" => RestrictedLieAlgebra::from_sparse(
            field,
            2,
            &[(0, 1, e(2, 1))],
            vec![e(2, 0), zero_vector(2)],
        )?,
        // [e1, e2] = e3, all squares zero
        "heisenberg3_zero" => RestrictedLieAlgebra::from_sparse(
            field,
            3,
            &[(0, 1, e(3, 2))],
            vec![zero_vector(3); 3],
        )?,
        // [e1, e2] = e3, e1^[2] = e3
        "heisenberg3_sq" => RestrictedLieAlgebra::from_sparse(
            field,
            3,
            &[(0, 1, e(3, 2))],
            vec![e(3, 2), zero_vector(3), zero_vector(3)],
        )?,
        "abelian_n" => RestrictedLieAlgebra::abelian(field, DEFAULT_ABELIAN_DIM),
        other => match other
            .strip_prefix("abelian_")
            .and_then(|d| d.parse::<usize>().ok())
        {
            Some(n) if n >= 1 => RestrictedLieAlgebra::abelian(field, n),
            _ => {
                return Err(Error::UnknownCatalog {
                    name: name.to_string(),
                    available: NAMES.join(", "),
                });
            }
        },
    };
    Ok(ResLieDerPair::with_zero_derivation(alg))
}

/// All fixed-size entries plus `abelian_n` at its default size.
pub fn all(field: &Field) -> Vec<(&'static str, ResLieDerPair)> {
    NAMES
        .iter()
        .map(|n| (*n, pair(n, field).expect("catalog names resolve")))
        .collect()
}
