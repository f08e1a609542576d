//! Cochains and their coordinates.
//!
//! A cochain of degree `n` with values in an `M`-dimensional module over an
//! `N`-dimensional algebra is a pair `(phi, omega)`:
//!
//! * `phi` is alternating multilinear, stored on strictly increasing index
//!   tuples `I` of length `n`;
//! * `omega` (only for `n >= 2`) is quadratic in its first slot and
//!   alternating multilinear in the remaining `n - 2` slots. It is stored as
//!   `omega(e_a; e_J)` for every basis index `a` and every increasing tuple `J`
//!   of length `n - 2`, including tuples that contain `a`. Its value at a
//!   general first argument follows from the polarization rule
//!   `omega(x + y; z) = omega(x; z) + omega(y; z) + phi(x, y, z)`.
//!
//! Coordinates list the `phi` block (tuples in lexicographic order, then the
//! module index `m`) followed by the `omega` block (`a`, then `J`
//! lexicographically, then `m`).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{zero_vector, Vector};

pub(crate) fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Position of a strictly increasing tuple among all increasing tuples of the
/// same length drawn from `0..n`, in lexicographic order.
pub(crate) fn tuple_rank(n: usize, tuple: &[usize]) -> usize {
    let k = tuple.len();
    let mut rank = 0;
    let mut next = 0;
    for (j, &t) in tuple.iter().enumerate() {
        for skipped in next..t {
            rank += binomial(n - 1 - skipped, k - 1 - j);
        }
        next = t + 1;
    }
    rank
}

/// All strictly increasing tuples of length `k` from `0..n`, lexicographically.
pub fn increasing_tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Sizes of a cochain space: algebra dimension, module dimension, degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CochainShape {
    pub alg_dim: usize,
    pub rep_dim: usize,
    pub degree: usize,
}

impl CochainShape {
    pub fn new(alg_dim: usize, rep_dim: usize, degree: usize) -> Self {
        CochainShape {
            alg_dim,
            rep_dim,
            degree,
        }
    }

    pub fn phi_tuples(&self) -> usize {
        binomial(self.alg_dim, self.degree)
    }

    /// Number of `J` tuples per basis index in the omega block.
    pub fn omega_tuples(&self) -> usize {
        if self.degree < 2 {
            0
        } else {
            binomial(self.alg_dim, self.degree - 2)
        }
    }

    pub fn phi_len(&self) -> usize {
        self.phi_tuples() * self.rep_dim
    }

    pub fn omega_len(&self) -> usize {
        self.alg_dim * self.omega_tuples() * self.rep_dim
    }

    pub fn dim(&self) -> usize {
        self.phi_len() + self.omega_len()
    }

    /// Coordinate of `phi(e_I)_m` for an increasing tuple `I`.
    pub fn phi_coord(&self, tuple: &[usize], m: usize) -> usize {
        tuple_rank(self.alg_dim, tuple) * self.rep_dim + m
    }

    /// Coordinate of `omega(e_a; e_J)_m` for an increasing tuple `J`.
    pub fn omega_coord(&self, a: usize, tuple: &[usize], m: usize) -> usize {
        self.phi_len()
            + (a * self.omega_tuples() + tuple_rank(self.alg_dim, tuple)) * self.rep_dim
            + m
    }

    fn check_tuple(&self, tuple: &[usize], len: usize) -> Result<()> {
        if tuple.len() != len {
            return Err(Error::InvalidInput(format!(
                "index tuple {tuple:?} should have length {len}"
            )));
        }
        if tuple.windows(2).any(|w| w[0] >= w[1]) || tuple.iter().any(|&t| t >= self.alg_dim) {
            return Err(Error::InvalidInput(format!(
                "index tuple {tuple:?} must be strictly increasing below {}",
                self.alg_dim
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    pub shape: CochainShape,
    pub coords: Vector,
}

impl Cochain {
    pub fn zero(shape: CochainShape) -> Self {
        Cochain {
            shape,
            coords: zero_vector(shape.dim()),
        }
    }

    pub fn from_coords(shape: CochainShape, coords: Vector) -> Result<Self> {
        if coords.len() != shape.dim() {
            return Err(Error::Dimension(format!(
                "cochain of degree {} needs {} coordinates, got {}",
                shape.degree,
                shape.dim(),
                coords.len()
            )));
        }
        Ok(Cochain { shape, coords })
    }

    pub fn degree(&self) -> usize {
        self.shape.degree
    }

    /// `phi(e_I)` as a module vector; zero if `I` repeats an index. `I` must be
    /// increasing otherwise.
    pub fn phi(&self, tuple: &[usize]) -> Vector {
        let m = self.shape.rep_dim;
        if tuple.windows(2).any(|w| w[0] == w[1]) {
            return zero_vector(m);
        }
        let base = self.shape.phi_coord(tuple, 0);
        self.coords[base..base + m].to_vec()
    }

    pub fn omega(&self, a: usize, tuple: &[usize]) -> Vector {
        let m = self.shape.rep_dim;
        if tuple.windows(2).any(|w| w[0] == w[1]) {
            return zero_vector(m);
        }
        let base = self.shape.omega_coord(a, tuple, 0);
        self.coords[base..base + m].to_vec()
    }

    pub fn set_phi(&mut self, tuple: &[usize], value: &[Scalar]) {
        let base = self.shape.phi_coord(tuple, 0);
        self.coords[base..base + value.len()].copy_from_slice(value);
    }

    pub fn set_omega(&mut self, a: usize, tuple: &[usize], value: &[Scalar]) {
        let base = self.shape.omega_coord(a, tuple, 0);
        self.coords[base..base + value.len()].copy_from_slice(value);
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|s| s.is_zero())
    }

    pub fn to_json(&self) -> CochainJson {
        let s = self.shape;
        let mut phi = Vec::new();
        for t in increasing_tuples(s.alg_dim, s.degree) {
            for m in 0..s.rep_dim {
                let v = self.coords[s.phi_coord(&t, m)];
                if !v.is_zero() {
                    phi.push((t.clone(), m, v.0));
                }
            }
        }
        let mut omega = Vec::new();
        if s.degree >= 2 {
            for a in 0..s.alg_dim {
                for t in increasing_tuples(s.alg_dim, s.degree - 2) {
                    for m in 0..s.rep_dim {
                        let v = self.coords[s.omega_coord(a, &t, m)];
                        if !v.is_zero() {
                            omega.push((a, t.clone(), m, v.0));
                        }
                    }
                }
            }
        }
        CochainJson {
            degree: s.degree,
            phi,
            omega,
        }
    }

    /// Reads the sparse form. Unlisted coordinates are zero; listing a
    /// coordinate twice is an error.
    pub fn from_json(
        json: &CochainJson,
        field: &Field,
        alg_dim: usize,
        rep_dim: usize,
    ) -> Result<Self> {
        let shape = CochainShape::new(alg_dim, rep_dim, json.degree);
        let mut c = Cochain::zero(shape);
        let mut seen = vec![false; shape.dim()];
        let mut put = |idx: usize, raw: u16, what: String| -> Result<()> {
            if seen[idx] {
                return Err(Error::InvalidInput(format!("{what} listed twice")));
            }
            seen[idx] = true;
            c.coords[idx] = field
                .element(raw as u32)
                .map_err(|e| Error::InvalidInput(format!("{what}: {e}")))?;
            Ok(())
        };
        for (i, (t, m, v)) in json.phi.iter().enumerate() {
            shape.check_tuple(t, json.degree)?;
            if *m >= rep_dim {
                return Err(Error::InvalidInput(format!(
                    "phi[{i}]: module index {m} out of range"
                )));
            }
            put(shape.phi_coord(t, *m), *v, format!("phi[{i}]"))?;
        }
        if !json.omega.is_empty() && json.degree < 2 {
            return Err(Error::InvalidInput(format!(
                "degree {} cochains have no omega part",
                json.degree
            )));
        }
        for (i, (a, t, m, v)) in json.omega.iter().enumerate() {
            shape.check_tuple(t, json.degree - 2)?;
            if *a >= alg_dim || *m >= rep_dim {
                return Err(Error::InvalidInput(format!(
                    "omega[{i}]: index out of range"
                )));
            }
            put(shape.omega_coord(*a, t, *m), *v, format!("omega[{i}]"))?;
        }
        Ok(c)
    }
}

/// Sparse JSON form of a cochain.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CochainJson {
    pub degree: usize,
    #[serde(default)]
    pub phi: Vec<(Vec<usize>, usize, u16)>,
    #[serde(default)]
    pub omega: Vec<(usize, Vec<usize>, usize, u16)>,
}

/// A cochain of the derivation-enriched complex. In degree `n >= 2` it is a
/// pair of a degree-`n` cochain and a degree-`(n-1)` cochain; in degree 1 the
/// lower part is absent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCochain {
    pub top: Cochain,
    pub low: Option<Cochain>,
}

impl PairCochain {
    pub fn zero(alg_dim: usize, rep_dim: usize, degree: usize) -> Self {
        let top = Cochain::zero(CochainShape::new(alg_dim, rep_dim, degree));
        let low =
            (degree >= 2).then(|| Cochain::zero(CochainShape::new(alg_dim, rep_dim, degree - 1)));
        PairCochain { top, low }
    }

    pub fn degree(&self) -> usize {
        self.top.degree()
    }

    /// Top block followed by the low block.
    pub fn coords(&self) -> Vector {
        let mut v = self.top.coords.clone();
        if let Some(low) = &self.low {
            v.extend_from_slice(&low.coords);
        }
        v
    }

    pub fn from_coords(
        alg_dim: usize,
        rep_dim: usize,
        degree: usize,
        coords: &[Scalar],
    ) -> Result<Self> {
        let ts = CochainShape::new(alg_dim, rep_dim, degree);
        let ls = CochainShape::new(alg_dim, rep_dim, degree.saturating_sub(1));
        let expected = ts.dim() + if degree >= 2 { ls.dim() } else { 0 };
        if coords.len() != expected {
            return Err(Error::Dimension(format!(
                "pair cochain of degree {degree} needs {expected} coordinates, got {}",
                coords.len()
            )));
        }
        let top = Cochain::from_coords(ts, coords[..ts.dim()].to_vec())?;
        let low = if degree >= 2 {
            Some(Cochain::from_coords(ls, coords[ts.dim()..].to_vec())?)
        } else {
            None
        };
        Ok(PairCochain { top, low })
    }

    pub fn is_zero(&self) -> bool {
        self.top.is_zero() && self.low.as_ref().is_none_or(|l| l.is_zero())
    }

    pub fn to_json(&self) -> PairCochainJson {
        PairCochainJson {
            top: self.top.to_json(),
            low: self.low.as_ref().map(|l| l.to_json()),
        }
    }

    pub fn from_json(
        json: &PairCochainJson,
        field: &Field,
        alg_dim: usize,
        rep_dim: usize,
    ) -> Result<Self> {
        let top = Cochain::from_json(&json.top, field, alg_dim, rep_dim)?;
        let n = top.degree();
        let low = match (&json.low, n) {
            (None, 1) => None,
            (None, _) => Some(Cochain::zero(CochainShape::new(
                alg_dim,
                rep_dim,
                n.saturating_sub(1),
            ))),
            (Some(_), 0 | 1) => {
                return Err(Error::InvalidInput(format!(
                    "degree {n} pair cochains have no low part"
                )))
            }
            (Some(l), _) => {
                let low = Cochain::from_json(l, field, alg_dim, rep_dim)?;
                if low.degree() + 1 != n {
                    return Err(Error::InvalidInput(format!(
                        "low part has degree {}, expected {}",
                        low.degree(),
                        n - 1
                    )));
                }
                Some(low)
            }
        };
        Ok(PairCochain { top, low })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairCochainJson {
    pub top: CochainJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub low: Option<CochainJson>,
}
