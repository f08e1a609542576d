//! Restricted Lie algebras, restricted derivations and restricted
//! representations, all given by structure constants on a basis.
//!
//! An element `x = sum x_a e_a` is a coordinate vector. The bracket is the
//! bilinear extension of the table `c[a][b] = [e_a, e_b]`, and the 2-map is
//! evaluated by
//!
//! ```text
//! x^[2] = sum_a x_a^2 q[a] + sum_{a<b} x_a x_b [e_a, e_b]
//! ```
//!
//! which makes `(x+y)^[2] = x^[2] + y^[2] + [x,y]` hold by construction once
//! the table is alternating. Constructors only check shapes; the axioms are
//! checked by the `validate_*` functions, which return reports.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{
    add_into, add_scaled_into, is_zero_vector, unit_vector, zero_vector, Matrix, Vector,
};

/// `sum_{a,b} x_a y_b table[a*dim + b]`.
pub(crate) fn bilinear_eval(
    field: &Field,
    dim: usize,
    table: &[Vector],
    x: &[Scalar],
    y: &[Scalar],
) -> Vector {
    let width = table.first().map_or(0, |v| v.len());
    let mut out = zero_vector(width);
    for (a, &xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        for (b, &yb) in y.iter().enumerate() {
            if yb.is_zero() {
                continue;
            }
            add_scaled_into(field, &mut out, field.mul(xa, yb), &table[a * dim + b]);
        }
    }
    out
}

/// `sum_a x_a^2 squares[a] + sum_{a<b} x_a x_b table[a*dim + b]`.
pub(crate) fn quadratic_eval(
    field: &Field,
    dim: usize,
    table: &[Vector],
    squares: &[Vector],
    x: &[Scalar],
) -> Vector {
    let width = squares.first().map_or(0, |v| v.len());
    let mut out = zero_vector(width);
    for (a, &xa) in x.iter().enumerate() {
        if xa.is_zero() {
            continue;
        }
        add_scaled_into(field, &mut out, field.square(xa), &squares[a]);
        for (b, &xb) in x.iter().enumerate().skip(a + 1) {
            if !xb.is_zero() {
                add_scaled_into(field, &mut out, field.mul(xa, xb), &table[a * dim + b]);
            }
        }
    }
    out
}

/// Iterates over all `|F|^n` vectors, the `i`-th having the base-`|F|` digits
/// of `i` as coordinates (least significant first).
pub fn all_vectors(field: &Field, n: usize) -> impl Iterator<Item = Vector> {
    let q = field.size() as u64;
    let total = q.checked_pow(n as u32).unwrap_or(u64::MAX);
    (0..total).map(move |mut i| {
        (0..n)
            .map(|_| {
                let d = (i % q) as u16;
                i /= q;
                Scalar(d)
            })
            .collect()
    })
}

/// `|F|^n` if it fits in a `u64`.
pub fn space_size(field: &Field, n: usize) -> Option<u64> {
    (field.size() as u64).checked_pow(n as u32)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedLieAlgebra {
    field: Field,
    dim: usize,
    bracket: Vec<Vector>,
    square: Vec<Vector>,
}

impl RestrictedLieAlgebra {
    /// Builds from a full `dim*dim` bracket table (row-major in `(a, b)`) and
    /// the squares of the basis vectors.
    pub fn new(
        field: &Field,
        dim: usize,
        bracket: Vec<Vector>,
        square: Vec<Vector>,
    ) -> Result<Self> {
        if bracket.len() != dim * dim || bracket.iter().any(|v| v.len() != dim) {
            return Err(Error::Dimension(format!(
                "bracket table must be {dim}x{dim} vectors of length {dim}"
            )));
        }
        if square.len() != dim || square.iter().any(|v| v.len() != dim) {
            return Err(Error::Dimension(format!(
                "square table must hold {dim} vectors of length {dim}"
            )));
        }
        Ok(RestrictedLieAlgebra {
            field: field.clone(),
            dim,
            bracket,
            square,
        })
    }

    /// Builds from brackets `[e_i, e_j]` given for `i < j`; the rest of the
    /// table is completed by symmetry and zero diagonal.
    pub fn from_sparse(
        field: &Field,
        dim: usize,
        entries: &[(usize, usize, Vector)],
        square: Vec<Vector>,
    ) -> Result<Self> {
        let mut bracket = vec![zero_vector(dim); dim * dim];
        for (i, j, v) in entries {
            if i >= j || *j >= dim {
                return Err(Error::InvalidInput(format!(
                    "bracket entry ({i}, {j}) needs i < j < {dim}"
                )));
            }
            if v.len() != dim {
                return Err(Error::Dimension(format!(
                    "bracket value for ({i}, {j}) has length {}",
                    v.len()
                )));
            }
            bracket[i * dim + j] = v.clone();
            bracket[j * dim + i] = v.clone();
        }
        RestrictedLieAlgebra::new(field, dim, bracket, square)
    }

    pub fn abelian(field: &Field, dim: usize) -> Self {
        RestrictedLieAlgebra {
            field: field.clone(),
            dim,
            bracket: vec![zero_vector(dim); dim * dim],
            square: vec![zero_vector(dim); dim],
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `[e_a, e_b]`.
    pub fn bracket_basis(&self, a: usize, b: usize) -> &[Scalar] {
        &self.bracket[a * self.dim + b]
    }

    /// `e_a^[2]`.
    pub fn square_basis(&self, a: usize) -> &[Scalar] {
        &self.square[a]
    }

    pub fn bracket_table(&self) -> &[Vector] {
        &self.bracket
    }

    pub fn square_table(&self) -> &[Vector] {
        &self.square
    }

    pub fn bracket_eval(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        bilinear_eval(&self.field, self.dim, &self.bracket, x, y)
    }

    pub fn two_map_eval(&self, x: &[Scalar]) -> Vector {
        quadratic_eval(&self.field, self.dim, &self.bracket, &self.square, x)
    }

    /// The matrix of `ad x = [x, -]`.
    pub fn ad(&self, x: &[Scalar]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim)
            .map(|b| self.bracket_eval(x, &unit_vector(self.dim, b)))
            .collect();
        Matrix::from_columns(&self.field, self.dim, &cols).expect("shapes agree")
    }

    pub fn ad_basis(&self, a: usize) -> Matrix {
        self.ad(&unit_vector(self.dim, a))
    }

    /// Both the bracket and the 2-map vanish identically.
    pub fn is_strongly_abelian(&self) -> bool {
        self.bracket.iter().all(|v| is_zero_vector(v))
            && self.square.iter().all(|v| is_zero_vector(v))
    }

    /// Structure constants in the basis `f_a = t e_a` given by the columns of
    /// an invertible matrix `t`.
    pub fn change_basis(&self, t: &Matrix) -> Result<Self> {
        let tinv = t
            .inverse()
            .ok_or_else(|| Error::InvalidInput("change of basis is not invertible".into()))?;
        if t.rows() != self.dim {
            return Err(Error::Dimension(
                "change of basis has the wrong size".into(),
            ));
        }
        let f: Vec<Vector> = t.columns();
        let n = self.dim;
        let mut bracket = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                bracket.push(tinv.mul_vec(&self.bracket_eval(&f[a], &f[b]))?);
            }
        }
        let square = (0..n)
            .map(|a| tinv.mul_vec(&self.two_map_eval(&f[a])))
            .collect::<Result<_>>()?;
        RestrictedLieAlgebra::new(&self.field, n, bracket, square)
    }
}

/// A restricted Lie algebra together with a (putative) restricted derivation.
/// The derivation matrix has `D e_a` as its column `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResLieDerPair {
    pub algebra: RestrictedLieAlgebra,
    pub derivation: Matrix,
}

impl ResLieDerPair {
    pub fn new(algebra: RestrictedLieAlgebra, derivation: Matrix) -> Result<Self> {
        let n = algebra.dim();
        if derivation.rows() != n || derivation.cols() != n {
            return Err(Error::Dimension(format!("derivation must be {n}x{n}")));
        }
        Ok(ResLieDerPair {
            algebra,
            derivation,
        })
    }

    pub fn with_zero_derivation(algebra: RestrictedLieAlgebra) -> Self {
        let n = algebra.dim();
        let derivation = Matrix::zeros(algebra.field(), n, n);
        ResLieDerPair {
            algebra,
            derivation,
        }
    }

    pub fn field(&self) -> &Field {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn derive(&self, x: &[Scalar]) -> Vector {
        self.derivation.mul_vec(x).expect("derivation is square")
    }

    /// Transports the pair along `f_a = t e_a`.
    pub fn change_basis(&self, t: &Matrix) -> Result<Self> {
        let tinv = t
            .inverse()
            .ok_or_else(|| Error::InvalidInput("change of basis is not invertible".into()))?;
        let algebra = self.algebra.change_basis(t)?;
        let derivation = tinv.mul(&self.derivation)?.mul(t)?;
        ResLieDerPair::new(algebra, derivation)
    }
}

/// A restricted representation of a pair on `F^dim`: one matrix per basis
/// element of the algebra plus the compatible endomorphism `eta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RestrictedRepresentation {
    pub dim: usize,
    pub rho: Vec<Matrix>,
    pub eta: Matrix,
}

impl RestrictedRepresentation {
    pub fn new(dim: usize, rho: Vec<Matrix>, eta: Matrix) -> Result<Self> {
        if rho.iter().any(|m| m.rows() != dim || m.cols() != dim)
            || eta.rows() != dim
            || eta.cols() != dim
        {
            return Err(Error::Dimension(format!(
                "representation matrices must be {dim}x{dim}"
            )));
        }
        Ok(RestrictedRepresentation { dim, rho, eta })
    }

    /// `rho(x) = sum_a x_a R_a`.
    pub fn rho_of(&self, field: &Field, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(field, self.dim, self.dim);
        for (a, &xa) in x.iter().enumerate() {
            if !xa.is_zero() {
                out = out.add(&self.rho[a].scale(xa)).expect("same shape");
            }
        }
        out
    }

    pub fn is_trivial_action(&self) -> bool {
        self.rho.iter().all(|m| m.is_zero())
    }
}

/// `g` acting on itself, with `eta = D`.
pub fn adjoint_rep(pair: &ResLieDerPair) -> RestrictedRepresentation {
    let n = pair.dim();
    let rho = (0..n).map(|a| pair.algebra.ad_basis(a)).collect();
    RestrictedRepresentation {
        dim: n,
        rho,
        eta: pair.derivation.clone(),
    }
}

/// The zero action on `F^dim` with the given `eta` (any `eta` is compatible).
pub fn trivial_rep(
    pair: &ResLieDerPair,
    dim: usize,
    eta: Option<Matrix>,
) -> RestrictedRepresentation {
    let f = pair.field();
    RestrictedRepresentation {
        dim,
        rho: vec![Matrix::zeros(f, dim, dim); pair.dim()],
        eta: eta.unwrap_or_else(|| Matrix::zeros(f, dim, dim)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub lhs: Vec<u16>,
    pub rhs: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// Whether the element sweep ran (it only runs on small spaces).
    pub sweep_ran: bool,
    pub failures: Vec<Failure>,
}

impl ValidationReport {
    fn from_failures(failures: Vec<Failure>, sweep_ran: bool) -> Self {
        ValidationReport {
            valid: failures.is_empty(),
            sweep_ran,
            failures,
        }
    }

    /// Failures found by the basis checks alone.
    pub fn basis_failures(&self) -> impl Iterator<Item = &Failure> {
        self.failures
            .iter()
            .filter(|f| !f.axiom.starts_with("sweep-"))
    }

    pub fn sweep_failures(&self) -> impl Iterator<Item = &Failure> {
        self.failures
            .iter()
            .filter(|f| f.axiom.starts_with("sweep-"))
    }
}

fn raw(v: &[Scalar]) -> Vec<u16> {
    v.iter().map(|s| s.0).collect()
}

fn raw_matrix(m: &Matrix) -> Vec<u16> {
    m.to_rows().concat().iter().map(|s| s.0).collect()
}

fn push_if_differs(
    out: &mut Vec<Failure>,
    axiom: &str,
    witness: Vec<usize>,
    lhs: Vec<u16>,
    rhs: Vec<u16>,
) {
    if lhs != rhs {
        out.push(Failure {
            axiom: axiom.to_string(),
            witness,
            lhs,
            rhs,
        });
    }
}

fn algebra_basis_failures(alg: &RestrictedLieAlgebra) -> Vec<Failure> {
    let n = alg.dim();
    let mut out = Vec::new();
    for a in 0..n {
        push_if_differs(
            &mut out,
            "alternating",
            vec![a, a],
            raw(alg.bracket_basis(a, a)),
            raw(&zero_vector(n)),
        );
        for b in a + 1..n {
            push_if_differs(
                &mut out,
                "alternating",
                vec![a, b],
                raw(alg.bracket_basis(a, b)),
                raw(alg.bracket_basis(b, a)),
            );
        }
    }
    let e = |i: usize| unit_vector(n, i);
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let lhs = alg.bracket_eval(&e(a), alg.bracket_basis(b, c));
                let mut rhs = alg.bracket_eval(&e(b), alg.bracket_basis(c, a));
                add_into(&mut rhs, &alg.bracket_eval(&e(c), alg.bracket_basis(a, b)));
                push_if_differs(&mut out, "jacobi", vec![a, b, c], raw(&lhs), raw(&rhs));
            }
        }
    }
    for a in 0..n {
        let lhs = alg.ad(alg.square_basis(a));
        let ada = alg.ad_basis(a);
        let rhs = ada.mul(&ada).expect("square");
        push_if_differs(
            &mut out,
            "two-map-ad",
            vec![a],
            raw_matrix(&lhs),
            raw_matrix(&rhs),
        );
    }
    out
}

fn algebra_sweep_failures(alg: &RestrictedLieAlgebra) -> Vec<Failure> {
    let n = alg.dim();
    let f = alg.field();
    let elems: Vec<Vector> = all_vectors(f, n).collect();
    let squares: Vec<Vector> = elems.iter().map(|x| alg.two_map_eval(x)).collect();
    let mut out = Vec::new();
    for (i, x) in elems.iter().enumerate() {
        let lhs = alg.ad(&squares[i]);
        let adx = alg.ad(x);
        let rhs = adx.mul(&adx).expect("square");
        if lhs != rhs {
            push_if_differs(
                &mut out,
                "sweep-ad",
                vec![i],
                raw_matrix(&lhs),
                raw_matrix(&rhs),
            );
            break;
        }
    }
    'outer: for (i, x) in elems.iter().enumerate() {
        for (j, y) in elems.iter().enumerate() {
            let s = crate::linalg::vec_add(x, y);
            let lhs = alg.two_map_eval(&s);
            let mut rhs = squares[i].clone();
            add_into(&mut rhs, &squares[j]);
            add_into(&mut rhs, &alg.bracket_eval(x, y));
            if lhs != rhs {
                push_if_differs(
                    &mut out,
                    "sweep-polarization",
                    vec![i, j],
                    raw(&lhs),
                    raw(&rhs),
                );
                break 'outer;
            }
        }
    }
    out
}

/// Checks the axioms on basis elements and, when `|F|^N <= exhaustive_limit`,
/// also sweeps `ad(x^[2]) = (ad x)^2` over all elements and
/// `(x+y)^[2] = x^[2] + y^[2] + [x,y]` over all pairs.
pub fn validate_algebra(alg: &RestrictedLieAlgebra, exhaustive_limit: u64) -> ValidationReport {
    let mut failures = algebra_basis_failures(alg);
    let sweep = space_size(alg.field(), alg.dim()).is_some_and(|s| s <= exhaustive_limit);
    if sweep {
        failures.extend(algebra_sweep_failures(alg));
    }
    ValidationReport::from_failures(failures, sweep)
}

fn derivation_basis_failures(pair: &ResLieDerPair) -> Vec<Failure> {
    let alg = &pair.algebra;
    let n = alg.dim();
    let mut out = Vec::new();
    let de: Vec<Vector> = (0..n).map(|a| pair.derivation.column(a)).collect();
    for a in 0..n {
        for b in a + 1..n {
            let lhs = pair.derive(alg.bracket_basis(a, b));
            let mut rhs = alg.bracket_eval(&de[a], &unit_vector(n, b));
            add_into(&mut rhs, &alg.bracket_eval(&unit_vector(n, a), &de[b]));
            push_if_differs(&mut out, "derivation", vec![a, b], raw(&lhs), raw(&rhs));
        }
    }
    for (a, da) in de.iter().enumerate() {
        let lhs = pair.derive(alg.square_basis(a));
        let rhs = alg.bracket_eval(&unit_vector(n, a), da);
        push_if_differs(
            &mut out,
            "restricted-derivation",
            vec![a],
            raw(&lhs),
            raw(&rhs),
        );
    }
    out
}

/// Basis-level checks of the algebra axioms and of `D` being a restricted
/// derivation.
pub fn validate_pair(pair: &ResLieDerPair) -> ValidationReport {
    let mut failures = algebra_basis_failures(&pair.algebra);
    failures.extend(derivation_basis_failures(pair));
    ValidationReport::from_failures(failures, false)
}

/// [`validate_pair`] plus, on small spaces, sweeps of the algebra identities
/// and of `D(x^[2]) = [x, Dx]` over all elements.
pub fn validate_pair_exhaustive(pair: &ResLieDerPair, exhaustive_limit: u64) -> ValidationReport {
    let mut report = validate_algebra(&pair.algebra, exhaustive_limit);
    report.failures.extend(derivation_basis_failures(pair));
    if report.sweep_ran {
        let alg = &pair.algebra;
        for (i, x) in all_vectors(alg.field(), alg.dim()).enumerate() {
            let lhs = pair.derive(&alg.two_map_eval(&x));
            let rhs = alg.bracket_eval(&x, &pair.derive(&x));
            if lhs != rhs {
                push_if_differs(
                    &mut report.failures,
                    "sweep-restricted-derivation",
                    vec![i],
                    raw(&lhs),
                    raw(&rhs),
                );
                break;
            }
        }
    }
    report.valid = report.failures.is_empty();
    report
}

/// Checks, for all basis indices, that `rho` preserves brackets and squares
/// and that `eta R_a = rho(D e_a) + R_a eta`.
pub fn validate_representation(
    pair: &ResLieDerPair,
    rep: &RestrictedRepresentation,
) -> ValidationReport {
    let alg = &pair.algebra;
    let f = alg.field();
    let n = alg.dim();
    let mut out = Vec::new();
    if rep.rho.len() != n {
        out.push(Failure {
            axiom: "shape".into(),
            witness: vec![rep.rho.len()],
            lhs: vec![rep.rho.len() as u16],
            rhs: vec![n as u16],
        });
        return ValidationReport::from_failures(out, false);
    }
    for a in 0..n {
        for b in a + 1..n {
            let lhs = rep.rho_of(f, alg.bracket_basis(a, b));
            let rhs = rep.rho[a]
                .mul(&rep.rho[b])
                .and_then(|p| p.add(&rep.rho[b].mul(&rep.rho[a])?))
                .expect("square");
            push_if_differs(
                &mut out,
                "rep-bracket",
                vec![a, b],
                raw_matrix(&lhs),
                raw_matrix(&rhs),
            );
        }
        let lhs = rep.rho_of(f, alg.square_basis(a));
        let rhs = rep.rho[a].mul(&rep.rho[a]).expect("square");
        push_if_differs(
            &mut out,
            "rep-square",
            vec![a],
            raw_matrix(&lhs),
            raw_matrix(&rhs),
        );
        let lhs = rep.eta.mul(&rep.rho[a]).expect("square");
        let rhs = rep
            .rho_of(f, &pair.derivation.column(a))
            .add(&rep.rho[a].mul(&rep.eta).expect("square"))
            .expect("square");
        push_if_differs(
            &mut out,
            "rep-derivation",
            vec![a],
            raw_matrix(&lhs),
            raw_matrix(&rhs),
        );
    }
    ValidationReport::from_failures(out, false)
}

/// The space of restricted derivations of an algebra.
#[derive(Clone, Debug)]
pub struct RestrictedDerivations {
    pub field: Field,
    pub basis: Vec<Matrix>,
}

impl RestrictedDerivations {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `|F|^dimension`, or `None` on overflow.
    pub fn count(&self) -> Option<u128> {
        (self.field.size() as u128).checked_pow(self.dimension() as u32)
    }
}

/// The residual of the restricted-derivation equations at `d`; `d` is a
/// restricted derivation exactly when this vanishes. Linear in `d`.
fn derivation_residual(alg: &RestrictedLieAlgebra, d: &Matrix) -> Vector {
    let pair = ResLieDerPair {
        algebra: alg.clone(),
        derivation: d.clone(),
    };
    let n = alg.dim();
    let mut out = Vec::new();
    let de: Vec<Vector> = (0..n).map(|a| d.column(a)).collect();
    for a in 0..n {
        for b in a + 1..n {
            let mut r = pair.derive(alg.bracket_basis(a, b));
            add_into(&mut r, &alg.bracket_eval(&de[a], &unit_vector(n, b)));
            add_into(&mut r, &alg.bracket_eval(&unit_vector(n, a), &de[b]));
            out.extend(r);
        }
        let mut r = pair.derive(alg.square_basis(a));
        add_into(&mut r, &alg.bracket_eval(&unit_vector(n, a), &de[a]));
        out.extend(r);
    }
    out
}

/// Solves the linear system cut out by the restricted-derivation identities
/// on basis elements.
pub fn restricted_derivations(alg: &RestrictedLieAlgebra) -> RestrictedDerivations {
    let f = alg.field();
    let n = alg.dim();
    let unknown = |idx: usize| {
        let mut m = Matrix::zeros(f, n, n);
        m.set(idx / n, idx % n, Scalar::ONE);
        m
    };
    let columns: Vec<Vector> = (0..n * n)
        .map(|i| derivation_residual(alg, &unknown(i)))
        .collect();
    let rows = columns.first().map_or(0, |c| c.len());
    let system = Matrix::from_columns(f, rows, &columns).expect("uniform columns");
    let basis = system
        .nullspace()
        .basis
        .into_iter()
        .map(|v| {
            let rows: Vec<Vector> = v.chunks(n).map(|c| c.to_vec()).collect();
            Matrix::from_rows_with_cols(f, &rows, n).expect("square")
        })
        .collect();
    RestrictedDerivations {
        field: f.clone(),
        basis,
    }
}

/// Number of restricted derivations, `None` if it overflows a `u128`.
pub fn count_restricted_derivations(alg: &RestrictedLieAlgebra) -> Option<u128> {
    restricted_derivations(alg).count()
}

/// `g ⋉ V`: basis of `g` first, then `V`, with
/// `[x+u, y+v] = [x,y] + rho(x)v + rho(y)u`, `(x+u)^[2] = x^[2] + rho(x)u`
/// and derivation `D ⊕ eta`.
pub fn semidirect_product(
    pair: &ResLieDerPair,
    rep: &RestrictedRepresentation,
) -> Result<ResLieDerPair> {
    let pv = validate_pair(pair);
    if !pv.valid {
        return Err(Error::InvalidStructure(format!(
            "pair fails {}",
            pv.failures[0].axiom
        )));
    }
    let rv = validate_representation(pair, rep);
    if !rv.valid {
        return Err(Error::InvalidStructure(format!(
            "representation fails {}",
            rv.failures[0].axiom
        )));
    }
    let f = pair.field();
    let (n, m) = (pair.dim(), rep.dim);
    let t = n + m;
    let mut bracket = vec![zero_vector(t); t * t];
    for a in 0..n {
        for b in 0..n {
            bracket[a * t + b][..n].copy_from_slice(pair.algebra.bracket_basis(a, b));
        }
        for v in 0..m {
            let col = rep.rho[a].column(v);
            bracket[a * t + n + v][n..].copy_from_slice(&col);
            bracket[(n + v) * t + a][n..].copy_from_slice(&col);
        }
    }
    let mut square = vec![zero_vector(t); t];
    for (a, sq) in square.iter_mut().enumerate().take(n) {
        sq[..n].copy_from_slice(pair.algebra.square_basis(a));
    }
    let mut derivation = Matrix::zeros(f, t, t);
    derivation.set_block(0, 0, &pair.derivation);
    derivation.set_block(n, n, &rep.eta);
    ResLieDerPair::new(
        RestrictedLieAlgebra::new(f, t, bracket, square)?,
        derivation,
    )
}

/// The direct sum of two pairs, basis of the first one first.
pub fn direct_sum(p: &ResLieDerPair, q: &ResLieDerPair) -> Result<ResLieDerPair> {
    if p.field() != q.field() {
        return Err(Error::InvalidInput(
            "direct sum of pairs over different fields".into(),
        ));
    }
    let f = p.field();
    let (n, m) = (p.dim(), q.dim());
    let t = n + m;
    let mut bracket = vec![zero_vector(t); t * t];
    let mut square = vec![zero_vector(t); t];
    for a in 0..n {
        for b in 0..n {
            bracket[a * t + b][..n].copy_from_slice(p.algebra.bracket_basis(a, b));
        }
        square[a][..n].copy_from_slice(p.algebra.square_basis(a));
    }
    for a in 0..m {
        for b in 0..m {
            bracket[(n + a) * t + n + b][n..].copy_from_slice(q.algebra.bracket_basis(a, b));
        }
        square[n + a][n..].copy_from_slice(q.algebra.square_basis(a));
    }
    let mut derivation = Matrix::zeros(f, t, t);
    derivation.set_block(0, 0, &p.derivation);
    derivation.set_block(n, n, &q.derivation);
    ResLieDerPair::new(
        RestrictedLieAlgebra::new(f, t, bracket, square)?,
        derivation,
    )
}
