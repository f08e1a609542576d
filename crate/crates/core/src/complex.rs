//! The restricted cochain complex `C*_{*2}(g; V)` and the derivation-enriched
//! complex `C*_ResLieDer(g; V)` of a pair with a restricted representation.
//!
//! The differentials are written once, generically over a [`Source`] that
//! answers "what is `phi(e_I)`" and "what is `omega(e_a; e_J)`". A numeric
//! source reads a concrete cochain; a symbolic source returns the linear form
//! picking out the corresponding input coordinates, which is how the matrices
//! are assembled (one symbolic evaluation per output basis point).
//!
//! Formulas, with `rho` the action and `D`, `eta` the derivation data:
//!
//! ```text
//! d phi(z_1..z_{n+1})  = sum_i rho(z_i) phi(..^z_i..) + sum_{i<j} phi([z_i,z_j], ..^z_i..^z_j..)
//! d omega(x, z_1..z_{n-1}) = rho(x) phi(x, z) + phi(x^[2], z) + sum_i phi([x,z_i], x, ..^z_i..)
//!                        + sum_i rho(z_i) omega(x, ..^z_i..) + sum_{i<j} omega(x, [z_i,z_j], ..)
//! delta phi(z)     = eta phi(z) + sum_i phi(.., D z_i, ..)
//! delta omega(x, z) = eta omega(x, z) + sum_i omega(x, .., D z_i, ..) + phi(x, D x, z)
//! theta^1 phi      = (d phi, delta phi)
//! theta^n (a, b)   = (d a, d b + delta a)
//! ```

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::algebra::{ResLieDerPair, RestrictedRepresentation};
use crate::cochain::{increasing_tuples, Cochain, CochainShape, PairCochain};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{
    add_scaled_into, quotient_dim, unit_vector, zero_vector, Matrix, SubspaceData, Vector,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexKind {
    Star2,
    #[serde(rename = "reslieder")]
    ResLieDer,
}

impl std::str::FromStr for ComplexKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "star2" => Ok(ComplexKind::Star2),
            "reslieder" => Ok(ComplexKind::ResLieDer),
            _ => Err(Error::InvalidInput(format!(
                "unknown complex '{s}' (expected star2 or reslieder)"
            ))),
        }
    }
}

/// Provides cochain values on basis points, either numerically or as linear
/// forms in the cochain coordinates.
pub(crate) trait Source {
    type Val: Clone;
    fn field(&self) -> &Field;
    fn zero(&self) -> Self::Val;
    /// `acc += c * phi(e_I)` for an increasing tuple `I`.
    fn add_phi(&self, acc: &mut Self::Val, c: Scalar, tuple: &[usize]);
    /// `acc += c * omega(e_a; e_J)` for an increasing tuple `J`.
    fn add_omega(&self, acc: &mut Self::Val, c: Scalar, a: usize, tuple: &[usize]);
    /// `acc += m v` where `m` acts on the module.
    fn add_mapped(&self, acc: &mut Self::Val, m: &Matrix, v: &Self::Val);
}

pub(crate) struct Numeric<'a> {
    pub field: &'a Field,
    pub cochain: &'a Cochain,
}

impl Source for Numeric<'_> {
    type Val = Vector;

    fn field(&self) -> &Field {
        self.field
    }

    fn zero(&self) -> Vector {
        zero_vector(self.cochain.shape.rep_dim)
    }

    fn add_phi(&self, acc: &mut Vector, c: Scalar, tuple: &[usize]) {
        let base = self.cochain.shape.phi_coord(tuple, 0);
        add_scaled_into(
            self.field,
            acc,
            c,
            &self.cochain.coords[base..base + self.cochain.shape.rep_dim],
        );
    }

    fn add_omega(&self, acc: &mut Vector, c: Scalar, a: usize, tuple: &[usize]) {
        let base = self.cochain.shape.omega_coord(a, tuple, 0);
        add_scaled_into(
            self.field,
            acc,
            c,
            &self.cochain.coords[base..base + self.cochain.shape.rep_dim],
        );
    }

    fn add_mapped(&self, acc: &mut Vector, m: &Matrix, v: &Vector) {
        let mv = m.mul_vec(v).expect("module dimensions agree");
        crate::linalg::add_into(acc, &mv);
    }
}

/// One unsorted list of `(column, coefficient)` terms per module component.
type Forms = Vec<Vec<(usize, Scalar)>>;

struct Symbolic<'a> {
    field: &'a Field,
    shape: CochainShape,
    /// Column of this cochain's first coordinate in the assembled matrix.
    offset: usize,
}

impl Source for Symbolic<'_> {
    type Val = Forms;

    fn field(&self) -> &Field {
        self.field
    }

    fn zero(&self) -> Forms {
        vec![Vec::new(); self.shape.rep_dim]
    }

    fn add_phi(&self, acc: &mut Forms, c: Scalar, tuple: &[usize]) {
        let base = self.offset + self.shape.phi_coord(tuple, 0);
        for (m, form) in acc.iter_mut().enumerate() {
            form.push((base + m, c));
        }
    }

    fn add_omega(&self, acc: &mut Forms, c: Scalar, a: usize, tuple: &[usize]) {
        let base = self.offset + self.shape.omega_coord(a, tuple, 0);
        for (m, form) in acc.iter_mut().enumerate() {
            form.push((base + m, c));
        }
    }

    fn add_mapped(&self, acc: &mut Forms, m: &Matrix, v: &Forms) {
        for (r, form) in acc.iter_mut().enumerate() {
            for (k, src) in v.iter().enumerate() {
                let coef = m.get(r, k);
                if coef.is_zero() {
                    continue;
                }
                form.extend(src.iter().map(|&(col, s)| (col, self.field.mul(coef, s))));
            }
        }
    }
}

fn phi_rec<S: Source>(
    src: &S,
    acc: &mut S::Val,
    coef: Scalar,
    args: &[&[Scalar]],
    chosen: &mut Vec<usize>,
) {
    let pos = chosen.len();
    if pos == args.len() {
        let mut t = chosen.clone();
        t.sort_unstable();
        src.add_phi(acc, coef, &t);
        return;
    }
    for (i, &v) in args[pos].iter().enumerate() {
        if v.is_zero() || chosen.contains(&i) {
            continue;
        }
        chosen.push(i);
        phi_rec(src, acc, src.field().mul(coef, v), args, chosen);
        chosen.pop();
    }
}

/// `acc += coef * phi(args)` by multilinear, alternating expansion.
pub(crate) fn add_phi_eval<S: Source>(src: &S, acc: &mut S::Val, coef: Scalar, args: &[&[Scalar]]) {
    if coef.is_zero() {
        return;
    }
    phi_rec(src, acc, coef, args, &mut Vec::with_capacity(args.len()));
}

fn omega_rec<S: Source>(
    src: &S,
    acc: &mut S::Val,
    coef: Scalar,
    a: usize,
    zs: &[&[Scalar]],
    chosen: &mut Vec<usize>,
) {
    let pos = chosen.len();
    if pos == zs.len() {
        let mut t = chosen.clone();
        t.sort_unstable();
        src.add_omega(acc, coef, a, &t);
        return;
    }
    for (i, &v) in zs[pos].iter().enumerate() {
        if v.is_zero() || chosen.contains(&i) {
            continue;
        }
        chosen.push(i);
        omega_rec(src, acc, src.field().mul(coef, v), a, zs, chosen);
        chosen.pop();
    }
}

/// `acc += coef * omega(x; zs)`, using
/// `omega(sum x_a e_a; z) = sum x_a^2 omega(e_a; z) + sum_{a<b} x_a x_b phi(e_a, e_b, z)`.
pub(crate) fn add_omega_eval<S: Source>(
    src: &S,
    acc: &mut S::Val,
    coef: Scalar,
    x: &[Scalar],
    zs: &[&[Scalar]],
) {
    if coef.is_zero() {
        return;
    }
    let f = src.field().clone();
    let n = x.len();
    for (a, &xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        omega_rec(
            src,
            acc,
            f.mul(coef, f.square(xa)),
            a,
            zs,
            &mut Vec::with_capacity(zs.len()),
        );
        for (b, &xb) in x.iter().enumerate().skip(a + 1) {
            if xb.is_zero() {
                continue;
            }
            let (ea, eb) = (unit_vector(n, a), unit_vector(n, b));
            let mut args: Vec<&[Scalar]> = vec![&ea, &eb];
            args.extend_from_slice(zs);
            add_phi_eval(src, acc, f.mul(coef, f.mul(xa, xb)), &args);
        }
    }
}

fn without<'a>(zs: &[&'a [Scalar]], skip: &[usize]) -> Vec<&'a [Scalar]> {
    zs.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, z)| *z)
        .collect()
}

/// A pair, a restricted representation of it, and the complex to use.
pub struct ComplexContext {
    pub pair: ResLieDerPair,
    pub rep: RestrictedRepresentation,
    pub kind: ComplexKind,
    cache: Mutex<HashMap<(u8, usize), Arc<Matrix>>>,
}

impl Clone for ComplexContext {
    fn clone(&self) -> Self {
        ComplexContext::new(self.pair.clone(), self.rep.clone(), self.kind)
    }
}

impl std::fmt::Debug for ComplexContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ComplexContext")
            .field("pair", &self.pair)
            .field("rep", &self.rep)
            .field("kind", &self.kind)
            .finish()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyResult {
    pub degree: usize,
    pub kind: ComplexKind,
    pub cochain_dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub betti: usize,
    #[serde(skip)]
    pub cocycle_basis: Vec<Vector>,
    #[serde(skip)]
    pub coboundary_basis: Vec<Vector>,
}

const OP_D: u8 = 0;
const OP_DELTA: u8 = 1;
const OP_THETA: u8 = 2;

impl ComplexContext {
    /// No validation is done here; see [`crate::algebra::validate_pair`] and
    /// [`crate::algebra::validate_representation`].
    pub fn new(pair: ResLieDerPair, rep: RestrictedRepresentation, kind: ComplexKind) -> Self {
        ComplexContext {
            pair,
            rep,
            kind,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn with_kind(&self, kind: ComplexKind) -> Self {
        ComplexContext::new(self.pair.clone(), self.rep.clone(), kind)
    }

    pub fn field(&self) -> &Field {
        self.pair.field()
    }

    pub fn alg_dim(&self) -> usize {
        self.pair.dim()
    }

    pub fn rep_dim(&self) -> usize {
        self.rep.dim
    }

    pub fn shape(&self, degree: usize) -> CochainShape {
        CochainShape::new(self.alg_dim(), self.rep_dim(), degree)
    }

    pub fn star2_dim(&self, degree: usize) -> usize {
        self.shape(degree).dim()
    }

    pub fn reslieder_dim(&self, degree: usize) -> usize {
        match degree {
            0 => 0,
            1 => self.star2_dim(1),
            n => self.star2_dim(n) + self.star2_dim(n - 1),
        }
    }

    /// Dimension of the degree-`n` cochains of this context's complex.
    pub fn cochain_dim(&self, degree: usize) -> usize {
        match self.kind {
            ComplexKind::Star2 => self.star2_dim(degree),
            ComplexKind::ResLieDer => self.reslieder_dim(degree),
        }
    }

    fn rho(&self, x: &[Scalar]) -> Matrix {
        self.rep.rho_of(self.field(), x)
    }

    fn d_phi<S: Source>(&self, src: &S, acc: &mut S::Val, zs: &[&[Scalar]]) {
        let alg = &self.pair.algebra;
        let one = Scalar::ONE;
        for i in 0..zs.len() {
            let mut v = src.zero();
            add_phi_eval(src, &mut v, one, &without(zs, &[i]));
            src.add_mapped(acc, &self.rho(zs[i]), &v);
        }
        for i in 0..zs.len() {
            for j in i + 1..zs.len() {
                let br = alg.bracket_eval(zs[i], zs[j]);
                let mut args: Vec<&[Scalar]> = vec![&br];
                args.extend(without(zs, &[i, j]));
                add_phi_eval(src, acc, one, &args);
            }
        }
    }

    /// The omega part of `d` applied to a cochain of degree `source_degree >= 1`;
    /// `zs` has `source_degree - 1` entries.
    fn d_omega<S: Source>(
        &self,
        src: &S,
        source_degree: usize,
        acc: &mut S::Val,
        x: &[Scalar],
        zs: &[&[Scalar]],
    ) {
        let alg = &self.pair.algebra;
        let one = Scalar::ONE;
        let mut v = src.zero();
        let mut args: Vec<&[Scalar]> = vec![x];
        args.extend_from_slice(zs);
        add_phi_eval(src, &mut v, one, &args);
        src.add_mapped(acc, &self.rho(x), &v);
        let x2 = alg.two_map_eval(x);
        args[0] = &x2;
        add_phi_eval(src, acc, one, &args);
        for i in 0..zs.len() {
            let br = alg.bracket_eval(x, zs[i]);
            let mut args: Vec<&[Scalar]> = vec![&br, x];
            args.extend(without(zs, &[i]));
            add_phi_eval(src, acc, one, &args);
        }
        if source_degree >= 2 {
            for i in 0..zs.len() {
                let mut v = src.zero();
                add_omega_eval(src, &mut v, one, x, &without(zs, &[i]));
                src.add_mapped(acc, &self.rho(zs[i]), &v);
            }
            for i in 0..zs.len() {
                for j in i + 1..zs.len() {
                    let br = alg.bracket_eval(zs[i], zs[j]);
                    let mut rest: Vec<&[Scalar]> = vec![&br];
                    rest.extend(without(zs, &[i, j]));
                    add_omega_eval(src, acc, one, x, &rest);
                }
            }
        }
    }

    fn delta_phi<S: Source>(&self, src: &S, acc: &mut S::Val, zs: &[&[Scalar]]) {
        let one = Scalar::ONE;
        let mut v = src.zero();
        add_phi_eval(src, &mut v, one, zs);
        src.add_mapped(acc, &self.rep.eta, &v);
        for i in 0..zs.len() {
            let dz = self.pair.derive(zs[i]);
            let mut args = zs.to_vec();
            args[i] = &dz;
            add_phi_eval(src, acc, one, &args);
        }
    }

    fn delta_omega<S: Source>(&self, src: &S, acc: &mut S::Val, x: &[Scalar], zs: &[&[Scalar]]) {
        let one = Scalar::ONE;
        let mut v = src.zero();
        add_omega_eval(src, &mut v, one, x, zs);
        src.add_mapped(acc, &self.rep.eta, &v);
        for i in 0..zs.len() {
            let dz = self.pair.derive(zs[i]);
            let mut args = zs.to_vec();
            args[i] = &dz;
            add_omega_eval(src, acc, one, x, &args);
        }
        let dx = self.pair.derive(x);
        let mut args: Vec<&[Scalar]> = vec![x, &dx];
        args.extend_from_slice(zs);
        add_phi_eval(src, acc, one, &args);
    }

    /// Builds a matrix whose rows are the coordinates of `out_shape`, filling
    /// each block of `rep_dim` rows from one symbolic evaluation.
    fn assemble(
        &self,
        out_shape: CochainShape,
        row_offset: usize,
        m: &mut Matrix,
        mut phi_point: impl FnMut(&mut Forms, &[&[Scalar]]),
        mut omega_point: impl FnMut(&mut Forms, &[Scalar], &[&[Scalar]]),
    ) {
        let n = self.alg_dim();
        let md = self.rep_dim();
        let basis: Vec<Vector> = (0..n).map(|a| unit_vector(n, a)).collect();
        let write = |m: &mut Matrix, row0: usize, forms: Forms| {
            for (k, form) in forms.into_iter().enumerate() {
                for (col, c) in form {
                    let cur = m.get(row0 + k, col);
                    m.set(row0 + k, col, cur + c);
                }
            }
        };
        for t in increasing_tuples(n, out_shape.degree) {
            let zs: Vec<&[Scalar]> = t.iter().map(|&i| basis[i].as_slice()).collect();
            let mut forms: Forms = vec![Vec::new(); md];
            phi_point(&mut forms, &zs);
            write(m, row_offset + out_shape.phi_coord(&t, 0), forms);
        }
        if out_shape.degree >= 2 {
            for a in 0..n {
                for t in increasing_tuples(n, out_shape.degree - 2) {
                    let zs: Vec<&[Scalar]> = t.iter().map(|&i| basis[i].as_slice()).collect();
                    let mut forms: Forms = vec![Vec::new(); md];
                    omega_point(&mut forms, &basis[a], &zs);
                    write(m, row_offset + out_shape.omega_coord(a, &t, 0), forms);
                }
            }
        }
    }

    fn cached(&self, key: (u8, usize), build: impl FnOnce() -> Matrix) -> Arc<Matrix> {
        if let Some(m) = self.cache.lock().expect("cache lock").get(&key) {
            return m.clone();
        }
        let m = Arc::new(build());
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, m.clone());
        m
    }

    fn symbolic(&self, degree: usize, offset: usize) -> Symbolic<'_> {
        Symbolic {
            field: self.field(),
            shape: self.shape(degree),
            offset,
        }
    }

    /// `d^n : C^n_{*2} -> C^{n+1}_{*2}`.
    pub fn star2_differential(&self, n: usize) -> Arc<Matrix> {
        self.cached((OP_D, n), || {
            let src = self.symbolic(n, 0);
            let out = self.shape(n + 1);
            let mut m = Matrix::zeros(self.field(), out.dim(), self.shape(n).dim());
            self.assemble(
                out,
                0,
                &mut m,
                |acc, zs| self.d_phi(&src, acc, zs),
                |acc, x, zs| self.d_omega(&src, n, acc, x, zs),
            );
            m
        })
    }

    /// `delta_n : C^n_{*2} -> C^n_{*2}` for `n >= 1`.
    pub fn delta_matrix(&self, n: usize) -> Arc<Matrix> {
        assert!(n >= 1, "delta is defined from degree 1");
        self.cached((OP_DELTA, n), || {
            let src = self.symbolic(n, 0);
            let s = self.shape(n);
            let mut m = Matrix::zeros(self.field(), s.dim(), s.dim());
            self.assemble(
                s,
                0,
                &mut m,
                |acc, zs| self.delta_phi(&src, acc, zs),
                |acc, x, zs| self.delta_omega(&src, acc, x, zs),
            );
            m
        })
    }

    /// `theta^n : C^n_ResLieDer -> C^{n+1}_ResLieDer`. For `n = 0` this is the
    /// zero map out of the zero space.
    pub fn reslieder_differential(&self, n: usize) -> Arc<Matrix> {
        self.cached((OP_THETA, n), || {
            let f = self.field();
            let rows = self.reslieder_dim(n + 1);
            let mut m = Matrix::zeros(f, rows, self.reslieder_dim(n));
            if n == 0 {
                return m;
            }
            let top = self.symbolic(n, 0);
            let top_out = self.shape(n + 1);
            self.assemble(
                top_out,
                0,
                &mut m,
                |acc, zs| self.d_phi(&top, acc, zs),
                |acc, x, zs| self.d_omega(&top, n, acc, x, zs),
            );
            let low_out = self.shape(n);
            let r0 = top_out.dim();
            if n == 1 {
                self.assemble(
                    low_out,
                    r0,
                    &mut m,
                    |acc, zs| self.delta_phi(&top, acc, zs),
                    |_, _, _| {},
                );
            } else {
                let low = self.symbolic(n - 1, self.star2_dim(n));
                self.assemble(
                    low_out,
                    r0,
                    &mut m,
                    |acc, zs| {
                        self.delta_phi(&top, acc, zs);
                        self.d_phi(&low, acc, zs);
                    },
                    |acc, x, zs| {
                        self.delta_omega(&top, acc, x, zs);
                        self.d_omega(&low, n - 1, acc, x, zs);
                    },
                );
            }
            m
        })
    }

    /// The degree-`n` differential of this context's complex.
    pub fn differential(&self, n: usize) -> Arc<Matrix> {
        match self.kind {
            ComplexKind::Star2 => self.star2_differential(n),
            ComplexKind::ResLieDer => self.reslieder_differential(n),
        }
    }

    pub fn apply_differential(&self, n: usize, coords: &[Scalar]) -> Result<Vector> {
        self.differential(n).mul_vec(coords)
    }

    /// `theta^n` applied to a pair cochain.
    pub fn theta(&self, c: &PairCochain) -> Result<PairCochain> {
        let n = c.degree();
        let out = self
            .with_kind(ComplexKind::ResLieDer)
            .reslieder_differential(n)
            .mul_vec(&c.coords())?;
        PairCochain::from_coords(self.alg_dim(), self.rep_dim(), n + 1, &out)
    }

    /// `H^n = ker d^n / im d^{n-1}`, with bases of both spaces.
    pub fn cohomology(&self, n: usize) -> Result<CohomologyResult> {
        let d = self.differential(n);
        let cocycles = d.nullspace();
        let has_prev = match self.kind {
            ComplexKind::Star2 => n >= 1,
            ComplexKind::ResLieDer => n >= 2,
        };
        let coboundaries = if has_prev {
            self.differential(n - 1).column_space()
        } else {
            SubspaceData {
                ambient_dim: self.cochain_dim(n),
                basis: Vec::new(),
            }
        };
        let betti = quotient_dim(self.field(), &cocycles, &coboundaries)?;
        Ok(CohomologyResult {
            degree: n,
            kind: self.kind,
            cochain_dim: self.cochain_dim(n),
            cocycle_dim: cocycles.dim(),
            coboundary_dim: coboundaries.dim(),
            betti,
            cocycle_basis: cocycles.basis,
            coboundary_basis: coboundaries.basis,
        })
    }

    pub fn is_cocycle(&self, n: usize, coords: &[Scalar]) -> Result<bool> {
        Ok(self
            .apply_differential(n, coords)?
            .iter()
            .all(|s| s.is_zero()))
    }

    /// Some `b` with `d^{n-1} b = coords`, if one exists.
    pub fn coboundary_witness(&self, n: usize, coords: &[Scalar]) -> Result<Option<Vector>> {
        if n == 0 || (self.kind == ComplexKind::ResLieDer && n == 1) {
            let zero = coords.iter().all(|s| s.is_zero());
            return Ok(zero.then(Vec::new));
        }
        self.differential(n - 1).solve(coords)
    }

    /// `(d phi)(zs)` evaluated straight from the formula, for any arguments.
    pub fn eval_d_phi(&self, c: &Cochain, zs: &[Vector]) -> Vector {
        let src = Numeric {
            field: self.field(),
            cochain: c,
        };
        let mut acc = src.zero();
        let zs: Vec<&[Scalar]> = zs.iter().map(|z| z.as_slice()).collect();
        self.d_phi(&src, &mut acc, &zs);
        acc
    }

    /// `(d omega)(x; zs)` evaluated straight from the formula.
    pub fn eval_d_omega(&self, c: &Cochain, x: &[Scalar], zs: &[Vector]) -> Vector {
        let src = Numeric {
            field: self.field(),
            cochain: c,
        };
        let mut acc = src.zero();
        let zs: Vec<&[Scalar]> = zs.iter().map(|z| z.as_slice()).collect();
        self.d_omega(&src, c.degree(), &mut acc, x, &zs);
        acc
    }
}

impl Cochain {
    /// `phi(args)` at arbitrary arguments.
    pub fn eval_phi(&self, field: &Field, args: &[Vector]) -> Vector {
        let src = Numeric {
            field,
            cochain: self,
        };
        let mut acc = src.zero();
        let args: Vec<&[Scalar]> = args.iter().map(|z| z.as_slice()).collect();
        add_phi_eval(&src, &mut acc, Scalar::ONE, &args);
        acc
    }

    /// `omega(x; zs)` at arbitrary arguments.
    pub fn eval_omega(&self, field: &Field, x: &[Scalar], zs: &[Vector]) -> Vector {
        let src = Numeric {
            field,
            cochain: self,
        };
        let mut acc = src.zero();
        let zs: Vec<&[Scalar]> = zs.iter().map(|z| z.as_slice()).collect();
        add_omega_eval(&src, &mut acc, Scalar::ONE, x, &zs);
        acc
    }
}
