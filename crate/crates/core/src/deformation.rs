//! Truncated formal deformations `(mu_t, sigma_t, D_t)` of a pair, their
//! infinitesimals, obstructions, extensions and equivalences.
//!
//! All cohomology here is taken in the adjoint context of the base pair. A
//! term `(mu_k, sigma_k, D_k)` is packaged as a degree-2 pair cochain whose top
//! part is `(mu_k, sigma_k)` and whose low part is `D_k`.
//!
//! The quadratic compatibility is imposed in the form
//! `sum_{i+j=k} mu_i(sigma_j(x), y) + mu_i(x, mu_j(x, y)) = 0`, which at order
//! zero is `ad(x^[2]) = (ad x)^2`.

use serde::Serialize;

use crate::algebra::{adjoint_rep, bilinear_eval, quadratic_eval, ResLieDerPair};
use crate::cochain::{increasing_tuples, Cochain, PairCochain};
use crate::complex::{ComplexContext, ComplexKind};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{add_into, is_zero_vector, unit_vector, vec_add, zero_vector, Matrix, Vector};

/// One coefficient `(mu_k, sigma_k, D_k)` of a deformation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationTerm {
    /// `mu(e_a, e_b)` at index `a*N + b`; alternating.
    pub mu: Vec<Vector>,
    /// `sigma(e_a)`.
    pub sigma: Vec<Vector>,
    pub derivation: Matrix,
}

impl DeformationTerm {
    pub fn zero(field: &Field, n: usize) -> Self {
        DeformationTerm {
            mu: vec![zero_vector(n); n * n],
            sigma: vec![zero_vector(n); n],
            derivation: Matrix::zeros(field, n, n),
        }
    }

    /// The bracket, 2-map and derivation of a pair, as the order-zero term.
    pub fn from_pair(pair: &ResLieDerPair) -> Self {
        DeformationTerm {
            mu: pair.algebra.bracket_table().to_vec(),
            sigma: pair.algebra.square_table().to_vec(),
            derivation: pair.derivation.clone(),
        }
    }

    pub fn dim(&self) -> usize {
        self.sigma.len()
    }

    pub fn mu_eval(&self, f: &Field, x: &[Scalar], y: &[Scalar]) -> Vector {
        bilinear_eval(f, self.dim(), &self.mu, x, y)
    }

    /// `sigma(x)`, extended by `sigma(x+y) = sigma(x) + sigma(y) + mu(x,y)`.
    pub fn sigma_eval(&self, f: &Field, x: &[Scalar]) -> Vector {
        quadratic_eval(f, self.dim(), &self.mu, &self.sigma, x)
    }

    pub fn der(&self, x: &[Scalar]) -> Vector {
        self.derivation.mul_vec(x).expect("square derivation")
    }

    pub fn is_zero(&self) -> bool {
        self.mu.iter().all(|v| is_zero_vector(v))
            && self.sigma.iter().all(|v| is_zero_vector(v))
            && self.derivation.is_zero()
    }

    pub fn to_pair_cochain(&self) -> PairCochain {
        let n = self.dim();
        let mut c = PairCochain::zero(n, n, 2);
        for t in increasing_tuples(n, 2) {
            c.top.set_phi(&t, &self.mu[t[0] * n + t[1]]);
        }
        for a in 0..n {
            c.top.set_omega(a, &[], &self.sigma[a]);
        }
        let low = c.low.as_mut().expect("degree 2 has a low part");
        for a in 0..n {
            low.set_phi(&[a], &self.derivation.column(a));
        }
        c
    }

    pub fn from_pair_cochain(field: &Field, c: &PairCochain) -> Result<Self> {
        let n = c.top.shape.alg_dim;
        if c.degree() != 2 || c.top.shape.rep_dim != n {
            return Err(Error::InvalidInput(
                "deformation terms are degree-2 adjoint cochains".into(),
            ));
        }
        let mut t = DeformationTerm::zero(field, n);
        for p in increasing_tuples(n, 2) {
            let v = c.top.phi(&p);
            t.mu[p[0] * n + p[1]] = v.clone();
            t.mu[p[1] * n + p[0]] = v;
        }
        for a in 0..n {
            t.sigma[a] = c.top.omega(a, &[]);
        }
        let low = c.low.as_ref().expect("degree 2 has a low part");
        let cols: Vec<Vector> = (0..n).map(|a| low.phi(&[a])).collect();
        t.derivation = Matrix::from_columns(field, n, &cols)?;
        Ok(t)
    }
}

/// A deformation truncated at `order`: `terms[0]` is the base pair and
/// `terms[k]` the coefficient of `t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedDeformation {
    pub base: ResLieDerPair,
    pub terms: Vec<DeformationTerm>,
}

impl TruncatedDeformation {
    /// The trivial deformation of the given order.
    pub fn trivial(base: &ResLieDerPair, order: usize) -> Self {
        let mut terms = vec![DeformationTerm::from_pair(base)];
        terms.extend((0..order).map(|_| DeformationTerm::zero(base.field(), base.dim())));
        TruncatedDeformation {
            base: base.clone(),
            terms,
        }
    }

    /// Builds from the terms of orders `1..=n`.
    pub fn from_higher_terms(base: &ResLieDerPair, higher: Vec<DeformationTerm>) -> Result<Self> {
        let n = base.dim();
        for t in &higher {
            if t.dim() != n
                || t.mu.len() != n * n
                || t.derivation.rows() != n
                || t.derivation.cols() != n
            {
                return Err(Error::Dimension(format!(
                    "deformation terms must live on a {n}-dimensional space"
                )));
            }
        }
        let mut terms = vec![DeformationTerm::from_pair(base)];
        terms.extend(higher);
        Ok(TruncatedDeformation {
            base: base.clone(),
            terms,
        })
    }

    /// Builds from all terms including the order-zero one, which must agree
    /// with the base pair.
    pub fn from_all_terms(base: &ResLieDerPair, terms: Vec<DeformationTerm>) -> Result<Self> {
        match terms.first() {
            Some(t0) if *t0 == DeformationTerm::from_pair(base) => {}
            _ => {
                return Err(Error::InvalidInput(
                    "order-zero term differs from the base pair".into(),
                ))
            }
        }
        TruncatedDeformation::from_higher_terms(base, terms[1..].to_vec())
    }

    pub fn order(&self) -> usize {
        self.terms.len() - 1
    }

    pub fn field(&self) -> &Field {
        self.base.field()
    }

    pub fn dim(&self) -> usize {
        self.base.dim()
    }

    pub fn truncate(&self, order: usize) -> Self {
        TruncatedDeformation {
            base: self.base.clone(),
            terms: self.terms[..=order.min(self.order())].to_vec(),
        }
    }

    fn check_term0(&self) -> Result<()> {
        if self.terms.first() != Some(&DeformationTerm::from_pair(&self.base)) {
            return Err(Error::InvalidInput(
                "order-zero term differs from the base pair".into(),
            ));
        }
        Ok(())
    }
}

/// The adjoint derivation-enriched context of a pair.
pub fn adjoint_context(pair: &ResLieDerPair) -> ComplexContext {
    ComplexContext::new(pair.clone(), adjoint_rep(pair), ComplexKind::ResLieDer)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationFailure {
    pub order: usize,
    pub equation: String,
    /// Basis indices; a witness `[a, b, c]` for the quadratic equations means
    /// `x = e_a + e_b` (or `e_a` when `a == b`) and `y = e_c`.
    pub witness: Vec<usize>,
    pub residual: Vec<u16>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationReport {
    pub valid: bool,
    pub order: usize,
    pub failures: Vec<DeformationFailure>,
}

/// `sum over i+j = k` with each index restricted to `range`.
fn pairs(k: usize, min: usize) -> impl Iterator<Item = (usize, usize)> {
    (min..=k.saturating_sub(min))
        .map(move |i| (i, k - i))
        .filter(move |&(_, j)| j >= min)
}

struct Residuals<'a> {
    f: &'a Field,
    terms: &'a [DeformationTerm],
    n: usize,
}

impl Residuals<'_> {
    /// `sum mu_i(x, mu_j(y, z)) + cyclic`.
    fn jacobi(&self, k: usize, min: usize, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.n);
        for (i, j) in pairs(k, min) {
            let (mi, mj) = (&self.terms[i], &self.terms[j]);
            add_into(&mut out, &mi.mu_eval(self.f, x, &mj.mu_eval(self.f, y, z)));
            add_into(&mut out, &mi.mu_eval(self.f, y, &mj.mu_eval(self.f, z, x)));
            add_into(&mut out, &mi.mu_eval(self.f, z, &mj.mu_eval(self.f, x, y)));
        }
        out
    }

    /// `sum mu_i(sigma_j(x), y) + mu_i(x, mu_j(x, y))`.
    fn two_map(&self, k: usize, min: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.n);
        for (i, j) in pairs(k, min) {
            let (ti, tj) = (&self.terms[i], &self.terms[j]);
            add_into(&mut out, &ti.mu_eval(self.f, &tj.sigma_eval(self.f, x), y));
            add_into(&mut out, &ti.mu_eval(self.f, x, &tj.mu_eval(self.f, x, y)));
        }
        out
    }

    /// `sum D_i(mu_j(x, y)) + mu_j(x, D_i y) + mu_j(y, D_i x)`.
    fn derivation(&self, k: usize, min: usize, x: &[Scalar], y: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.n);
        for (i, j) in pairs(k, min) {
            let (ti, tj) = (&self.terms[i], &self.terms[j]);
            add_into(&mut out, &ti.der(&tj.mu_eval(self.f, x, y)));
            add_into(&mut out, &tj.mu_eval(self.f, x, &ti.der(y)));
            add_into(&mut out, &tj.mu_eval(self.f, y, &ti.der(x)));
        }
        out
    }

    /// `sum D_i(sigma_j(x)) + mu_j(x, D_i x)`.
    fn restricted(&self, k: usize, min: usize, x: &[Scalar]) -> Vector {
        let mut out = zero_vector(self.n);
        for (i, j) in pairs(k, min) {
            let (ti, tj) = (&self.terms[i], &self.terms[j]);
            add_into(&mut out, &ti.der(&tj.sigma_eval(self.f, x)));
            add_into(&mut out, &tj.mu_eval(self.f, x, &ti.der(x)));
        }
        out
    }
}

fn raw(v: &[Scalar]) -> Vec<u16> {
    v.iter().map(|s| s.0).collect()
}

/// Checks the deformation equations of every order `0..=order` on basis
/// triples and pairs, and the quadratic ones on `{e_a} ∪ {e_a + e_b}`.
pub fn check_deformation(d: &TruncatedDeformation) -> Result<DeformationReport> {
    d.check_term0()?;
    let f = d.field();
    let n = d.dim();
    let r = Residuals {
        f,
        terms: &d.terms,
        n,
    };
    let e = |a: usize| unit_vector(n, a);
    let mut failures = Vec::new();
    let mut push = |order: usize, eq: &str, witness: Vec<usize>, v: Vector| {
        if !is_zero_vector(&v) {
            failures.push(DeformationFailure {
                order,
                equation: eq.to_string(),
                witness,
                residual: raw(&v),
            });
        }
    };
    for k in 0..=d.order() {
        for t in increasing_tuples(n, 3) {
            push(
                k,
                "jacobi",
                t.clone(),
                r.jacobi(k, 0, &e(t[0]), &e(t[1]), &e(t[2])),
            );
        }
        for t in increasing_tuples(n, 2) {
            push(
                k,
                "derivation",
                t.clone(),
                r.derivation(k, 0, &e(t[0]), &e(t[1])),
            );
        }
        for a in 0..n {
            for b in a..n {
                let x = if a == b { e(a) } else { vec_add(&e(a), &e(b)) };
                for c in 0..n {
                    push(
                        k,
                        "two-map-compat",
                        vec![a, b, c],
                        r.two_map(k, 0, &x, &e(c)),
                    );
                }
                push(k, "restricted-der", vec![a, b], r.restricted(k, 0, &x));
            }
        }
    }
    Ok(DeformationReport {
        valid: failures.is_empty(),
        order: d.order(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Infinitesimal {
    pub cochain: PairCochain,
    pub is_cocycle: bool,
}

/// The order-one term as a degree-2 cochain of the adjoint complex.
pub fn infinitesimal(d: &TruncatedDeformation) -> Result<Infinitesimal> {
    if d.order() < 1 {
        return Err(Error::InvalidInput(
            "a deformation of order 0 has no infinitesimal".into(),
        ));
    }
    let ctx = adjoint_context(&d.base);
    let cochain = d.terms[1].to_pair_cochain();
    let is_cocycle = ctx.is_cocycle(2, &cochain.coords())?;
    Ok(Infinitesimal {
        cochain,
        is_cocycle,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObstructionReport {
    /// The order of the deformation being extended.
    pub order: usize,
    pub cochain: PairCochain,
    pub is_cocycle: bool,
    pub trivial: bool,
    /// A term `xi` with `theta^2 xi = obstruction`, when one exists.
    pub witness: Option<PairCochain>,
}

/// The degree-3 obstruction to extending an order-`n` deformation to order
/// `n + 1`, built from the products of terms of orders `1..=n`.
pub fn obstruction_cochain(d: &TruncatedDeformation) -> Result<PairCochain> {
    d.check_term0()?;
    let f = d.field();
    let n = d.dim();
    let k = d.order() + 1;
    let mut terms = d.terms.clone();
    // Index k never occurs with both indices positive, but keep slices in range.
    terms.push(DeformationTerm::zero(f, n));
    let r = Residuals {
        f,
        terms: &terms,
        n,
    };
    let e = |a: usize| unit_vector(n, a);
    let mut ob = PairCochain::zero(n, n, 3);
    for t in increasing_tuples(n, 3) {
        ob.top
            .set_phi(&t, &r.jacobi(k, 1, &e(t[0]), &e(t[1]), &e(t[2])));
    }
    for a in 0..n {
        for b in 0..n {
            ob.top.set_omega(a, &[b], &r.two_map(k, 1, &e(a), &e(b)));
        }
    }
    let low: &mut Cochain = ob.low.as_mut().expect("degree 3 has a low part");
    for t in increasing_tuples(n, 2) {
        low.set_phi(&t, &r.derivation(k, 1, &e(t[0]), &e(t[1])));
    }
    for a in 0..n {
        low.set_omega(a, &[], &r.restricted(k, 1, &e(a)));
    }
    Ok(ob)
}

fn ensure_valid(d: &TruncatedDeformation) -> Result<()> {
    let report = check_deformation(d)?;
    match report.failures.first() {
        None => Ok(()),
        Some(f) => Err(Error::InvalidStructure(format!(
            "deformation fails the {} equation at order {} (witness {:?})",
            f.equation, f.order, f.witness
        ))),
    }
}

/// The obstruction of a valid deformation, with a witness when it is a
/// coboundary.
pub fn obstruction(d: &TruncatedDeformation) -> Result<ObstructionReport> {
    ensure_valid(d)?;
    let ctx = adjoint_context(&d.base);
    obstruction_in(&ctx, d)
}

fn obstruction_in(ctx: &ComplexContext, d: &TruncatedDeformation) -> Result<ObstructionReport> {
    let n = d.dim();
    let cochain = obstruction_cochain(d)?;
    let coords = cochain.coords();
    let is_cocycle = ctx.is_cocycle(3, &coords)?;
    let witness = ctx
        .coboundary_witness(3, &coords)?
        .map(|w| PairCochain::from_coords(n, n, 2, &w))
        .transpose()?;
    Ok(ObstructionReport {
        order: d.order(),
        cochain,
        is_cocycle,
        trivial: witness.is_some(),
        witness,
    })
}

/// Appends the witness of a trivial obstruction as the next term, or returns
/// `None` when the obstruction class is nonzero.
pub fn extend_deformation(d: &TruncatedDeformation) -> Result<Option<TruncatedDeformation>> {
    let report = obstruction(d)?;
    let Some(w) = report.witness else {
        return Ok(None);
    };
    let mut out = d.clone();
    out.terms
        .push(DeformationTerm::from_pair_cochain(d.field(), &w)?);
    Ok(Some(out))
}

/// Truncated power series in `t` with coefficients of type `T`.
type Series<T> = Vec<T>;

fn mat_series_mul(a: &Series<Matrix>, b: &Series<Matrix>, order: usize) -> Result<Series<Matrix>> {
    let f = a[0].field().clone();
    let n = a[0].rows();
    (0..=order)
        .map(|s| {
            let mut acc = Matrix::zeros(&f, n, n);
            for i in 0..=s {
                acc = acc.add(&a[i].mul(&b[s - i])?)?;
            }
            Ok(acc)
        })
        .collect()
}

fn apply_series(m: &Series<Matrix>, v: &Series<Vector>, order: usize) -> Series<Vector> {
    let n = v[0].len();
    (0..=order)
        .map(|s| {
            let mut acc = zero_vector(n);
            for i in 0..=s {
                add_into(&mut acc, &m[i].mul_vec(&v[s - i]).expect("square"));
            }
            acc
        })
        .collect()
}

/// Transports `d` along `pi_t = Id + sum_k pi_k t^k`:
/// `mu'(x,y) = pi^-1 mu(pi x, pi y)`, `sigma'(x) = pi^-1 sigma(pi x)`,
/// `D' = pi^-1 D pi`, all truncated at the order of `d`.
pub fn apply_formal_isomorphism(
    d: &TruncatedDeformation,
    steps: &[(usize, Matrix)],
) -> Result<TruncatedDeformation> {
    d.check_term0()?;
    let f = d.field().clone();
    let n = d.dim();
    let order = d.order();
    let mut p: Series<Matrix> = vec![Matrix::identity(&f, n)];
    p.extend((0..order).map(|_| Matrix::zeros(&f, n, n)));
    for (k, m) in steps {
        if *k == 0 || m.rows() != n || m.cols() != n {
            return Err(Error::InvalidInput(
                "steps must be (k >= 1, n x n matrix)".into(),
            ));
        }
        if *k <= order {
            p[*k] = p[*k].add(m)?;
        }
    }
    // pi^-1 = Q with Q_0 = Id and Q_s = sum_{l>=1} P_l Q_{s-l}.
    let mut q: Series<Matrix> = vec![Matrix::identity(&f, n)];
    for s in 1..=order {
        let mut acc = Matrix::zeros(&f, n, n);
        for l in 1..=s {
            acc = acc.add(&p[l].mul(&q[s - l])?)?;
        }
        q.push(acc);
    }
    let images: Vec<Series<Vector>> = (0..n)
        .map(|a| (0..=order).map(|k| p[k].column(a)).collect())
        .collect();
    let terms = &d.terms;
    let mu_series = |u: &Series<Vector>, v: &Series<Vector>| -> Series<Vector> {
        let mut out = vec![zero_vector(n); order + 1];
        for (i, t) in terms.iter().enumerate() {
            for k in 0..=order - i {
                for l in 0..=order - i - k {
                    add_into(&mut out[i + k + l], &t.mu_eval(&f, &u[k], &v[l]));
                }
            }
        }
        out
    };
    let sigma_series = |u: &Series<Vector>| -> Series<Vector> {
        let mut out = vec![zero_vector(n); order + 1];
        for (i, t) in terms.iter().enumerate() {
            for k in 0..=order {
                if i + 2 * k <= order {
                    add_into(&mut out[i + 2 * k], &t.sigma_eval(&f, &u[k]));
                }
                for l in k + 1..=order {
                    if i + k + l <= order {
                        add_into(&mut out[i + k + l], &t.mu_eval(&f, &u[k], &u[l]));
                    }
                }
            }
        }
        out
    };
    let d_series: Series<Matrix> = terms.iter().map(|t| t.derivation.clone()).collect();
    let new_d = mat_series_mul(&q, &mat_series_mul(&d_series, &p, order)?, order)?;
    let mut new_terms: Vec<DeformationTerm> =
        (0..=order).map(|_| DeformationTerm::zero(&f, n)).collect();
    for a in 0..n {
        for b in a + 1..n {
            let m = apply_series(&q, &mu_series(&images[a], &images[b]), order);
            for (s, v) in m.into_iter().enumerate() {
                new_terms[s].mu[a * n + b] = v.clone();
                new_terms[s].mu[b * n + a] = v;
            }
        }
        let sg = apply_series(&q, &sigma_series(&images[a]), order);
        for (s, v) in sg.into_iter().enumerate() {
            new_terms[s].sigma[a] = v;
        }
    }
    for (s, m) in new_d.into_iter().enumerate() {
        new_terms[s].derivation = m;
    }
    Ok(TruncatedDeformation {
        base: d.base.clone(),
        terms: new_terms,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceTranscript {
    /// The `(k, pi_k)` applied, in order.
    pub steps: Vec<(usize, Matrix)>,
    /// The first order whose term is not a coboundary, with that term.
    pub blocked_at: Option<(usize, PairCochain)>,
    /// The deformation after all steps; its terms of orders below the
    /// blocking order (all of them when unblocked) vanish.
    pub result: TruncatedDeformation,
}

/// Kills the terms of `d` order by order with formal isomorphisms
/// `Id + pi_k t^k`, stopping at the first term that is not a coboundary.
pub fn trivialize(d: &TruncatedDeformation) -> Result<EquivalenceTranscript> {
    ensure_valid(d)?;
    let ctx = adjoint_context(&d.base);
    let f = d.field().clone();
    let n = d.dim();
    let theta1 = ctx.reslieder_differential(1);
    let mut cur = d.clone();
    let mut steps = Vec::new();
    for k in 1..=d.order() {
        let term = cur.terms[k].to_pair_cochain();
        if term.is_zero() {
            continue;
        }
        let Some(pi) = theta1.solve(&term.coords())? else {
            return Ok(EquivalenceTranscript {
                steps,
                blocked_at: Some((k, term)),
                result: cur,
            });
        };
        let cols: Vec<Vector> = pi.chunks(n).map(|c| c.to_vec()).collect();
        let pi = Matrix::from_columns(&f, n, &cols)?;
        cur = apply_formal_isomorphism(&cur, &[(k, pi.clone())])?;
        steps.push((k, pi));
    }
    Ok(EquivalenceTranscript {
        steps,
        blocked_at: None,
        result: cur,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityCertificate {
    pub h2: usize,
    pub rigid: bool,
}

/// `H^2` of the adjoint derivation-enriched complex; zero means every
/// deformation is trivial.
pub fn rigidity_certificate(pair: &ResLieDerPair) -> Result<RigidityCertificate> {
    let h2 = adjoint_context(pair).cohomology(2)?.betti;
    Ok(RigidityCertificate { h2, rigid: h2 == 0 })
}
