//! Central extensions `0 -> h -> ĝ -> g -> 0` by a strongly abelian `h`,
//! classified by degree-2 cochains, and the lifting of derivations along them.
//!
//! Extensions are realized on `g ⊕ h` with the basis of `g` first. A cocycle
//! `((psi, varsigma), tau)` in the context of `g` acting trivially on `h` with
//! `eta = D_h` gives
//!
//! ```text
//! [x + h1, y + h2] = [x, y] + psi(x, y)
//! (x + h)^[2]      = x^[2] + varsigma(x)
//! D(x + h)         = D_g x + tau(x) + D_h h
//! ```

use serde::Serialize;

use crate::algebra::{trivial_rep, validate_pair, ResLieDerPair, RestrictedLieAlgebra};
use crate::cochain::{increasing_tuples, Cochain, CochainShape, PairCochain};
use crate::complex::{ComplexContext, ComplexKind};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{complement, is_zero_vector, unit_vector, zero_vector, Matrix, Vector};

/// Data of a central extension of pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralExtensionSpec {
    pub g: ResLieDerPair,
    pub h: ResLieDerPair,
    pub cocycle: PairCochain,
}

/// `g` acting trivially on `h`, with `eta = D_h`, in the given complex.
pub fn extension_context(
    g: &ResLieDerPair,
    h: &ResLieDerPair,
    kind: ComplexKind,
) -> ComplexContext {
    ComplexContext::new(
        g.clone(),
        trivial_rep(g, h.dim(), Some(h.derivation.clone())),
        kind,
    )
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BuiltExtension {
    pub g: ResLieDerPair,
    pub h: ResLieDerPair,
    pub ghat: ResLieDerPair,
    /// `(N+H) x H`.
    pub inclusion: Matrix,
    /// `N x (N+H)`.
    pub projection: Matrix,
    /// `(N+H) x N`, the section `x -> x + 0`.
    pub canonical_section: Matrix,
}

fn block_maps(f: &Field, n: usize, hd: usize) -> (Matrix, Matrix, Matrix) {
    let t = n + hd;
    let mut inclusion = Matrix::zeros(f, t, hd);
    inclusion.set_block(n, 0, &Matrix::identity(f, hd));
    let mut projection = Matrix::zeros(f, n, t);
    projection.set_block(0, 0, &Matrix::identity(f, n));
    (inclusion, projection.clone(), projection.transpose())
}

/// The names of the four blocks of `theta^2` applied to a degree-2 cochain,
/// in coordinate order: Jacobi-type, square compatibility, derivation and
/// restricted-derivation equations.
const COCYCLE_BLOCKS: [&str; 4] = ["bracket", "square", "derivation", "restricted-derivation"];

fn violated_block(ctx: &ComplexContext, image: &[crate::field::Scalar]) -> Option<&'static str> {
    let s3 = ctx.shape(3);
    let s2 = ctx.shape(2);
    let bounds = [
        0,
        s3.phi_len(),
        s3.dim(),
        s3.dim() + s2.phi_len(),
        s3.dim() + s2.dim(),
    ];
    (0..4)
        .find(|&i| !is_zero_vector(&image[bounds[i]..bounds[i + 1]]))
        .map(|i| COCYCLE_BLOCKS[i])
}

fn require_valid(pair: &ResLieDerPair, what: &str) -> Result<()> {
    let r = validate_pair(pair);
    if !r.valid {
        return Err(Error::InvalidStructure(format!(
            "{what} fails {}",
            r.failures[0].axiom
        )));
    }
    Ok(())
}

fn require_strongly_abelian(h: &ResLieDerPair) -> Result<()> {
    if !h.algebra.is_strongly_abelian() {
        return Err(Error::InvalidStructure(
            "the kernel must be strongly abelian".into(),
        ));
    }
    Ok(())
}

fn check_cocycle_shape(c: &PairCochain, n: usize, hd: usize) -> Result<()> {
    if c.degree() != 2 || c.top.shape.alg_dim != n || c.top.shape.rep_dim != hd {
        return Err(Error::Dimension(format!(
            "expected a degree-2 cochain on {n} generators with values in {hd} dimensions"
        )));
    }
    Ok(())
}

/// The structure of `g ⊕ h` twisted by a degree-2 cochain. Does not check
/// the cocycle condition.
fn twisted_algebra(
    g: &RestrictedLieAlgebra,
    hd: usize,
    c: &Cochain,
) -> Result<RestrictedLieAlgebra> {
    let f = g.field();
    let n = g.dim();
    let t = n + hd;
    let mut bracket = vec![zero_vector(t); t * t];
    for a in 0..n {
        for b in 0..n {
            let v = &mut bracket[a * t + b];
            v[..n].copy_from_slice(g.bracket_basis(a, b));
            if a != b {
                let (lo, hi) = (a.min(b), a.max(b));
                v[n..].copy_from_slice(&c.phi(&[lo, hi]));
            }
        }
    }
    let mut square = vec![zero_vector(t); t];
    for (a, sq) in square.iter_mut().enumerate().take(n) {
        sq[..n].copy_from_slice(g.square_basis(a));
        sq[n..].copy_from_slice(&c.omega(a, &[]));
    }
    RestrictedLieAlgebra::new(f, t, bracket, square)
}

/// Builds `ĝ = g ⊕_c h` after checking that the cochain is a 2-cocycle.
pub fn build(spec: &CentralExtensionSpec) -> Result<BuiltExtension> {
    let (g, h) = (&spec.g, &spec.h);
    require_valid(g, "g")?;
    require_valid(h, "h")?;
    require_strongly_abelian(h)?;
    let (n, hd) = (g.dim(), h.dim());
    check_cocycle_shape(&spec.cocycle, n, hd)?;
    let ctx = extension_context(g, h, ComplexKind::ResLieDer);
    let image = ctx
        .reslieder_differential(2)
        .mul_vec(&spec.cocycle.coords())?;
    if let Some(block) = violated_block(&ctx, &image) {
        return Err(Error::NotACocycle(block.to_string()));
    }
    let f = g.field();
    let algebra = twisted_algebra(&g.algebra, hd, &spec.cocycle.top)?;
    let low = spec.cocycle.low.as_ref().expect("degree 2 has a low part");
    let mut derivation = Matrix::zeros(f, n + hd, n + hd);
    derivation.set_block(0, 0, &g.derivation);
    let tau_cols: Vec<Vector> = (0..n).map(|a| low.phi(&[a])).collect();
    derivation.set_block(n, 0, &Matrix::from_columns(f, hd, &tau_cols)?);
    derivation.set_block(n, n, &h.derivation);
    let ghat = ResLieDerPair::new(algebra, derivation)?;
    let (inclusion, projection, canonical_section) = block_maps(f, n, hd);
    Ok(BuiltExtension {
        g: g.clone(),
        h: h.clone(),
        ghat,
        inclusion,
        projection,
        canonical_section,
    })
}

fn check_section(projection: &Matrix, section: &Matrix, n: usize, t: usize) -> Result<()> {
    if section.rows() != t || section.cols() != n {
        return Err(Error::InvalidSection(format!("expected a {t}x{n} matrix")));
    }
    if projection.mul(section)? != Matrix::identity(projection.field(), n) {
        return Err(Error::InvalidSection(
            "projection after section is not the identity".into(),
        ));
    }
    Ok(())
}

fn h_part(v: &[crate::field::Scalar], n: usize, what: &str) -> Result<Vector> {
    if !is_zero_vector(&v[..n]) {
        return Err(Error::InvalidSection(format!(
            "{what} has a component outside h"
        )));
    }
    Ok(v[n..].to_vec())
}

/// `(psi, varsigma)` of a section of an extension of restricted algebras:
/// `psi(x,y) = [s x, s y] + s[x,y]`, `varsigma(x) = s(x)^[2] + s(x^[2])`.
fn extract_algebra_part(
    g: &RestrictedLieAlgebra,
    ghat: &RestrictedLieAlgebra,
    hd: usize,
    section: &Matrix,
) -> Result<Cochain> {
    let n = g.dim();
    let s: Vec<Vector> = (0..n).map(|a| section.column(a)).collect();
    let mut c = Cochain::zero(CochainShape::new(n, hd, 2));
    for t in increasing_tuples(n, 2) {
        let (a, b) = (t[0], t[1]);
        let mut v = ghat.bracket_eval(&s[a], &s[b]);
        crate::linalg::add_into(&mut v, &section.mul_vec(g.bracket_basis(a, b))?);
        c.set_phi(&t, &h_part(&v, n, "psi")?);
    }
    for (a, sa) in s.iter().enumerate() {
        let mut v = ghat.two_map_eval(sa);
        crate::linalg::add_into(&mut v, &section.mul_vec(g.square_basis(a))?);
        c.set_omega(a, &[], &h_part(&v, n, "varsigma")?);
    }
    Ok(c)
}

/// The cocycle `((psi, varsigma), tau)` of a section, with
/// `tau(x) = D(s x) + s(D_g x)`.
pub fn extract_cocycle(ext: &BuiltExtension, section: &Matrix) -> Result<PairCochain> {
    let (n, hd) = (ext.g.dim(), ext.h.dim());
    check_section(&ext.projection, section, n, n + hd)?;
    let top = extract_algebra_part(&ext.g.algebra, &ext.ghat.algebra, hd, section)?;
    let mut low = Cochain::zero(CochainShape::new(n, hd, 1));
    for a in 0..n {
        let mut v = ext.ghat.derive(&section.column(a));
        crate::linalg::add_into(&mut v, &section.mul_vec(&ext.g.derivation.column(a))?);
        low.set_phi(&[a], &h_part(&v, n, "tau")?);
    }
    Ok(PairCochain {
        top,
        low: Some(low),
    })
}

/// Checks that `map : e1.ghat -> e2.ghat` preserves bracket, 2-map and
/// derivation, and commutes with the inclusions and projections.
pub fn is_extension_morphism(e1: &BuiltExtension, e2: &BuiltExtension, map: &Matrix) -> bool {
    let t = e1.ghat.dim();
    if map.rows() != e2.ghat.dim() || map.cols() != t {
        return false;
    }
    let m = |v: &[crate::field::Scalar]| map.mul_vec(v).expect("shape checked");
    let (a1, a2) = (&e1.ghat.algebra, &e2.ghat.algebra);
    for a in 0..t {
        let ea = unit_vector(t, a);
        for b in a + 1..t {
            let eb = unit_vector(t, b);
            if m(&a1.bracket_eval(&ea, &eb)) != a2.bracket_eval(&m(&ea), &m(&eb)) {
                return false;
            }
        }
        if m(&a1.two_map_eval(&ea)) != a2.two_map_eval(&m(&ea)) {
            return false;
        }
        if m(&e1.ghat.derive(&ea)) != e2.ghat.derive(&m(&ea)) {
            return false;
        }
    }
    map.mul(&e1.inclusion).ok().as_ref() == Some(&e2.inclusion)
        && e2.projection.mul(map).ok().as_ref() == Some(&e1.projection)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionIsomorphism {
    /// `H x N`, with `c1 - c2 = theta^1 nu`.
    pub nu: Matrix,
    /// `x + h -> x + nu(x) + h`, from the first extension to the second.
    pub map: Matrix,
}

/// Decides whether the extensions built from `c1` and `c2` are equivalent,
/// returning the explicit isomorphism when they are.
pub fn extensions_isomorphic(
    g: &ResLieDerPair,
    h: &ResLieDerPair,
    c1: &PairCochain,
    c2: &PairCochain,
) -> Result<Option<ExtensionIsomorphism>> {
    let e1 = build(&CentralExtensionSpec {
        g: g.clone(),
        h: h.clone(),
        cocycle: c1.clone(),
    })?;
    let e2 = build(&CentralExtensionSpec {
        g: g.clone(),
        h: h.clone(),
        cocycle: c2.clone(),
    })?;
    let ctx = extension_context(g, h, ComplexKind::ResLieDer);
    let diff = crate::linalg::vec_add(&c1.coords(), &c2.coords());
    let Some(nu) = ctx.reslieder_differential(1).solve(&diff)? else {
        return Ok(None);
    };
    let (n, hd) = (g.dim(), h.dim());
    let f = g.field();
    let cols: Vec<Vector> = nu.chunks(hd.max(1)).take(n).map(|c| c.to_vec()).collect();
    let nu = if hd == 0 {
        Matrix::zeros(f, 0, n)
    } else {
        Matrix::from_columns(f, hd, &cols)?
    };
    let mut map = Matrix::identity(f, n + hd);
    map.set_block(n, 0, &nu);
    if !is_extension_morphism(&e1, &e2, &map) {
        return Err(Error::InvalidStructure(
            "cohomologous cocycles gave a non-morphism".into(),
        ));
    }
    Ok(Some(ExtensionIsomorphism { nu, map }))
}

/// A central extension of restricted Lie algebras (no derivations), used for
/// lifting derivation pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraExtension {
    pub g: RestrictedLieAlgebra,
    pub h_dim: usize,
    pub ghat: RestrictedLieAlgebra,
}

/// The restricted complex of `g` acting trivially on an `hd`-dimensional space.
pub fn star2_context(g: &RestrictedLieAlgebra, hd: usize) -> ComplexContext {
    let pair = ResLieDerPair::with_zero_derivation(g.clone());
    let rep = trivial_rep(&pair, hd, None);
    ComplexContext::new(pair, rep, ComplexKind::Star2)
}

impl AlgebraExtension {
    /// `g ⊕_(psi, varsigma) F^hd` for a 2-cocycle of the restricted complex.
    pub fn from_cocycle(g: &RestrictedLieAlgebra, hd: usize, cocycle: &Cochain) -> Result<Self> {
        let n = g.dim();
        if cocycle.degree() != 2 || cocycle.shape.alg_dim != n || cocycle.shape.rep_dim != hd {
            return Err(Error::Dimension(format!(
                "expected a degree-2 cochain on {n} generators with values in {hd} dimensions"
            )));
        }
        let ctx = star2_context(g, hd);
        let image = ctx.star2_differential(2).mul_vec(&cocycle.coords)?;
        let s3 = ctx.shape(3);
        if !is_zero_vector(&image[..s3.phi_len()]) {
            return Err(Error::NotACocycle("bracket".into()));
        }
        if !is_zero_vector(&image[s3.phi_len()..]) {
            return Err(Error::NotACocycle("square".into()));
        }
        Ok(AlgebraExtension {
            g: g.clone(),
            h_dim: hd,
            ghat: twisted_algebra(g, hd, cocycle)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.g.dim() + self.h_dim
    }

    pub fn inclusion(&self) -> Matrix {
        block_maps(self.g.field(), self.g.dim(), self.h_dim).0
    }

    pub fn projection(&self) -> Matrix {
        block_maps(self.g.field(), self.g.dim(), self.h_dim).1
    }

    pub fn canonical_section(&self) -> Matrix {
        block_maps(self.g.field(), self.g.dim(), self.h_dim).2
    }

    /// `(psi, varsigma)` of a section.
    pub fn extract(&self, section: &Matrix) -> Result<Cochain> {
        check_section(&self.projection(), section, self.g.dim(), self.dim())?;
        extract_algebra_part(&self.g, &self.ghat, self.h_dim, section)
    }
}

/// The map `Phi(psi, varsigma) = (D_h psi + psi(D_g x, y) + psi(x, D_g y),
/// D_h varsigma(x) + psi(x, D_g x))` on degree-2 cochains.
pub fn phi_map(field: &Field, d_g: &Matrix, d_h: &Matrix, c: &Cochain) -> Result<Cochain> {
    let n = c.shape.alg_dim;
    let mut out = Cochain::zero(c.shape);
    let e = |a: usize| unit_vector(n, a);
    for t in increasing_tuples(n, 2) {
        let (x, y) = (e(t[0]), e(t[1]));
        let mut v = d_h.mul_vec(&c.phi(&t))?;
        crate::linalg::add_into(&mut v, &c.eval_phi(field, &[d_g.mul_vec(&x)?, y.clone()]));
        crate::linalg::add_into(&mut v, &c.eval_phi(field, &[x, d_g.mul_vec(&y)?]));
        out.set_phi(&t, &v);
    }
    for a in 0..n {
        let mut v = d_h.mul_vec(&c.omega(a, &[]))?;
        crate::linalg::add_into(&mut v, &c.eval_phi(field, &[e(a), d_g.column(a)]));
        out.set_omega(a, &[], &v);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationObstruction {
    pub cochain: Cochain,
    pub is_cocycle: bool,
    pub trivial: bool,
    /// `H x N`, with `d^1 gamma = obstruction`.
    pub gamma: Option<Matrix>,
}

fn check_derivations(ext: &AlgebraExtension, d_g: &Matrix, d_h: &Matrix) -> Result<()> {
    let (n, hd) = (ext.g.dim(), ext.h_dim);
    if d_g.rows() != n || d_g.cols() != n || d_h.rows() != hd || d_h.cols() != hd {
        return Err(Error::Dimension(
            "derivation matrices have the wrong size".into(),
        ));
    }
    require_valid(&ResLieDerPair::new(ext.g.clone(), d_g.clone())?, "(g, D_g)")
}

/// Whether `(D_g, D_h)` lifts to a restricted derivation of `ĝ`, computed
/// from the cocycle of `section` (the canonical one when `None`).
pub fn derivation_obstruction(
    ext: &AlgebraExtension,
    d_g: &Matrix,
    d_h: &Matrix,
    section: Option<&Matrix>,
) -> Result<DerivationObstruction> {
    check_derivations(ext, d_g, d_h)?;
    let section = section.cloned().unwrap_or_else(|| ext.canonical_section());
    let c = ext.extract(&section)?;
    let ob = phi_map(ext.g.field(), d_g, d_h, &c)?;
    let ctx = star2_context(&ext.g, ext.h_dim);
    let is_cocycle = ctx.is_cocycle(2, &ob.coords)?;
    let gamma = ctx.coboundary_witness(2, &ob.coords)?;
    let gamma = match gamma {
        Some(v) => {
            let cols: Vec<Vector> = (0..ext.g.dim())
                .map(|a| v[a * ext.h_dim..(a + 1) * ext.h_dim].to_vec())
                .collect();
            Some(if ext.h_dim == 0 {
                Matrix::zeros(ext.g.field(), 0, ext.g.dim())
            } else {
                Matrix::from_columns(ext.g.field(), ext.h_dim, &cols)?
            })
        }
        None => None,
    };
    Ok(DerivationObstruction {
        cochain: ob,
        is_cocycle,
        trivial: gamma.is_some(),
        gamma,
    })
}

/// The lift `D(s_0 x + h) = s_0(D_g x) + gamma(x) + D_h h` when the
/// obstruction vanishes.
pub fn lift_derivation_pair(
    ext: &AlgebraExtension,
    d_g: &Matrix,
    d_h: &Matrix,
) -> Result<Option<ResLieDerPair>> {
    let ob = derivation_obstruction(ext, d_g, d_h, None)?;
    let Some(gamma) = ob.gamma else {
        return Ok(None);
    };
    let n = ext.g.dim();
    let mut d = Matrix::zeros(ext.g.field(), ext.dim(), ext.dim());
    d.set_block(0, 0, d_g);
    d.set_block(n, 0, &gamma);
    d.set_block(n, n, d_h);
    let lifted = ResLieDerPair::new(ext.ghat.clone(), d)?;
    if !validate_pair(&lifted).valid {
        return Err(Error::InvalidStructure(
            "lift of a trivial obstruction is not a restricted derivation".into(),
        ));
    }
    Ok(Some(lifted))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiAction {
    /// Dimension of `H^2_{*2}(g; h)`.
    pub h2: usize,
    /// Column `j` holds the class of `Phi(r_j)` in the basis `r_1..r_h2`.
    #[serde(skip)]
    pub matrix: Matrix,
    #[serde(skip)]
    pub class_representatives: Vec<Cochain>,
    pub is_zero: bool,
}

/// The action of `Phi` on `H^2_{*2}(g; h)`, after checking that it maps
/// coboundaries to coboundaries.
pub fn phi_action(
    g: &RestrictedLieAlgebra,
    hd: usize,
    d_g: &Matrix,
    d_h: &Matrix,
) -> Result<PhiAction> {
    let f = g.field();
    let ctx = star2_context(g, hd);
    let coh = ctx.cohomology(2)?;
    let amb = ctx.star2_dim(2);
    let reps = complement(f, amb, &coh.coboundary_basis, &coh.cocycle_basis);
    let apply = |v: &Vector| -> Result<Vector> {
        let c = Cochain::from_coords(ctx.shape(2), v.clone())?;
        Ok(phi_map(f, d_g, d_h, &c)?.coords)
    };
    let b_mat = Matrix::from_columns(f, amb, &coh.coboundary_basis)?;
    for b in &coh.coboundary_basis {
        if b_mat.solve(&apply(b)?)?.is_none() {
            return Err(Error::PhiNotWellDefined(
                "a coboundary maps outside the coboundaries".into(),
            ));
        }
    }
    let mut all = coh.coboundary_basis.clone();
    all.extend(reps.iter().cloned());
    let all_mat = Matrix::from_columns(f, amb, &all)?;
    let nb = coh.coboundary_basis.len();
    let mut columns = Vec::new();
    for r in &reps {
        let img = apply(r)?;
        let Some(x) = all_mat.solve(&img)? else {
            return Err(Error::PhiNotWellDefined(
                "a cocycle maps outside the cocycles".into(),
            ));
        };
        columns.push(x[nb..].to_vec());
    }
    let h2 = reps.len();
    let matrix = Matrix::from_columns(f, h2, &columns)?;
    let class_representatives = reps
        .into_iter()
        .map(|v| Cochain::from_coords(ctx.shape(2), v))
        .collect::<Result<Vec<_>>>()?;
    Ok(PhiAction {
        h2,
        is_zero: matrix.is_zero(),
        matrix,
        class_representatives,
    })
}
