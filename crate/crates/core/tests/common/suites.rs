//! Checks shared by the test targets and the acceptance gate. Each one
//! panics on the first disagreement.

use super::oracle::{self, Alg, Ctx};
use rand::Rng;
use reslieder::algebra::{
    adjoint_rep, count_restricted_derivations, restricted_derivations, semidirect_product,
    trivial_rep, validate_pair, validate_pair_exhaustive, validate_representation, ResLieDerPair,
    RestrictedDerivations, RestrictedLieAlgebra, RestrictedRepresentation,
};
use reslieder::cochain::{Cochain, PairCochain};
use reslieder::complex::{ComplexContext, ComplexKind};
use reslieder::deformation::{
    adjoint_context, apply_formal_isomorphism, check_deformation, extend_deformation,
    infinitesimal, obstruction, DeformationTerm, TruncatedDeformation,
};
use reslieder::extension::{
    build, derivation_obstruction, extension_context, extensions_isomorphic, extract_cocycle,
    is_extension_morphism, lift_derivation_pair, phi_action, star2_context, AlgebraExtension,
    BuiltExtension, CentralExtensionSpec,
};
use reslieder::linalg::{vec_add, Matrix, Vector};
use reslieder::{catalog, Error, Field, Scalar};

use super as common;

// Cohomology of the catalog.

/// Betti numbers over GF(2): H^0..H^3 of the plain complex, H^1..H^3 of the
/// pair complex. Produced by the element-level oracle and frozen here.
const GOLDEN: &[(&str, &str, [usize; 4], [usize; 3])] = &[
    ("abelian1", "trivial", [1, 1, 1, 1], [1, 2, 2]),
    ("abelian1", "adjoint", [1, 1, 1, 1], [1, 2, 2]),
    ("nonabelian2", "trivial", [1, 0, 1, 2], [0, 1, 3]),
    ("nonabelian2", "adjoint", [0, 0, 0, 0], [2, 2, 0]),
    ("heisenberg3_zero", "trivial", [1, 2, 3, 5], [2, 5, 8]),
    ("heisenberg3_zero", "adjoint", [1, 2, 3, 9], [4, 7, 12]),
    ("heisenberg3_sq", "trivial", [1, 2, 3, 5], [2, 5, 8]),
    ("heisenberg3_sq", "adjoint", [1, 2, 3, 9], [4, 7, 12]),
];

pub fn contexts(pair: &ResLieDerPair) -> Vec<(&'static str, RestrictedRepresentation)> {
    vec![
        ("trivial", trivial_rep(pair, 1, None)),
        ("adjoint", adjoint_rep(pair)),
    ]
}

pub fn library_betti(
    pair: &ResLieDerPair,
    rep: &RestrictedRepresentation,
) -> (Vec<usize>, Vec<usize>) {
    let star = ComplexContext::new(pair.clone(), rep.clone(), ComplexKind::Star2);
    let res = star.with_kind(ComplexKind::ResLieDer);
    (
        (0..4).map(|n| star.cohomology(n).unwrap().betti).collect(),
        (1..4).map(|n| res.cohomology(n).unwrap().betti).collect(),
    )
}

pub fn oracle_betti(
    pair: &ResLieDerPair,
    rep: &RestrictedRepresentation,
) -> (Vec<usize>, Vec<usize>) {
    let o = Ctx::new(pair, rep);
    (
        (0..4).map(|n| o.star2_betti(n)).collect(),
        (1..4).map(|n| o.reslieder_betti(n)).collect(),
    )
}

pub fn frozen_betti_numbers() {
    let f = Field::gf2();
    for &(name, rep_name, star, res) in GOLDEN {
        let pair = catalog::pair(name, &f).unwrap();
        let rep = contexts(&pair)
            .into_iter()
            .find(|(n, _)| *n == rep_name)
            .unwrap()
            .1;
        let (s, r) = library_betti(&pair, &rep);
        assert_eq!(s, star, "{name} {rep_name} plain complex");
        assert_eq!(r, res, "{name} {rep_name} pair complex");
    }
}

pub fn oracle_reproduces_frozen_values() {
    let f = Field::gf2();
    for &(name, rep_name, star, res) in GOLDEN {
        let pair = catalog::pair(name, &f).unwrap();
        let rep = contexts(&pair)
            .into_iter()
            .find(|(n, _)| *n == rep_name)
            .unwrap()
            .1;
        assert_eq!(
            oracle_betti(&pair, &rep),
            (star.to_vec(), res.to_vec()),
            "{name} {rep_name}"
        );
    }
}

pub fn hand_computed_values() {
    let f = Field::gf2();
    let a1 = catalog::pair("abelian1", &f).unwrap();
    let ctx = ComplexContext::new(
        a1.clone(),
        trivial_rep(&a1, 1, None),
        ComplexKind::ResLieDer,
    );
    assert_eq!(ctx.cohomology(1).unwrap().betti, 1);
    assert_eq!(ctx.cohomology(2).unwrap().betti, 2);
    assert_eq!(
        ctx.with_kind(ComplexKind::Star2)
            .cohomology(0)
            .unwrap()
            .betti,
        1
    );
    let n2 = catalog::pair("nonabelian2", &f).unwrap();
    let ctx = ComplexContext::new(
        n2.clone(),
        trivial_rep(&n2, 1, None),
        ComplexKind::ResLieDer,
    );
    assert_eq!(ctx.cohomology(1).unwrap().betti, 0);
    assert_eq!(
        ctx.with_kind(ComplexKind::Star2)
            .cohomology(1)
            .unwrap()
            .betti,
        0
    );
}

pub fn derivation_counts_match_brute_force() {
    let f = Field::gf2();
    let n2 = catalog::pair("nonabelian2", &f).unwrap();
    assert_eq!(oracle::count_restricted_derivations(&n2.algebra), 4);
    assert_eq!(count_restricted_derivations(&n2.algebra), Some(4));
    let h = catalog::pair("heisenberg3_zero", &f).unwrap();
    assert_eq!(oracle::count_restricted_derivations(&h.algebra), 16);
    assert_eq!(count_restricted_derivations(&h.algebra), Some(16));
    for name in ["abelian1", "heisenberg3_sq", "abelian_n"] {
        let p = catalog::pair(name, &f).unwrap();
        let brute = oracle::count_restricted_derivations(&p.algebra) as u128;
        assert_eq!(
            count_restricted_derivations(&p.algebra),
            Some(brute),
            "{name}"
        );
    }
}

pub fn catalog_complexes_square_to_zero() {
    for f in [Field::gf2(), Field::gf4()] {
        for (name, pair) in catalog::all(&f) {
            for (rep_name, rep) in contexts(&pair) {
                let ctx = ComplexContext::new(pair.clone(), rep, ComplexKind::Star2);
                let res = ctx.with_kind(ComplexKind::ResLieDer);
                for n in 0..=4 {
                    let dd = ctx.differential(n + 1).mul(&ctx.differential(n)).unwrap();
                    assert!(dd.is_zero(), "{name} {rep_name} d{n}");
                    let tt = res.differential(n + 1).mul(&res.differential(n)).unwrap();
                    assert!(tt.is_zero(), "{name} {rep_name} theta{n}");
                }
            }
        }
    }
}

pub fn catalog_delta_commutes_with_differential() {
    for f in [Field::gf2(), Field::gf4()] {
        for (name, pair) in catalog::all(&f) {
            for (rep_name, rep) in contexts(&pair) {
                let ctx = ComplexContext::new(pair.clone(), rep, ComplexKind::Star2);
                for n in 1..=4 {
                    let lhs = ctx
                        .delta_matrix(n + 1)
                        .mul(&ctx.star2_differential(n))
                        .unwrap();
                    let rhs = ctx.star2_differential(n).mul(&ctx.delta_matrix(n)).unwrap();
                    assert_eq!(lhs, rhs, "{name} {rep_name} delta commutes at {n}");
                }
            }
        }
    }
}

// Random inputs.

pub const SWEEP_LIMIT: u64 = 4096;

pub fn basis_valid(r: &reslieder::ValidationReport) -> bool {
    r.basis_failures().next().is_none()
}

pub fn sweep_valid(r: &reslieder::ValidationReport) -> bool {
    r.sweep_failures().next().is_none()
}

/// Semidirect products and adjoint representations of random valid inputs
/// pass validation, and the element sweep agrees with the basis checks.
pub fn check_random_input(seed: u64) {
    let f = Field::gf2();
    let mut rng = common::rng(seed);
    let dim = 1 + (seed % 4) as usize;
    let pair = common::random_pair(&mut rng, &f, dim);
    let full = validate_pair_exhaustive(&pair, SWEEP_LIMIT);
    assert!(full.sweep_ran && full.valid, "{:?}", full.failures);
    let adj = adjoint_rep(&pair);
    assert!(validate_representation(&pair, &adj).valid);
    let rep = common::random_rep(&mut rng, &pair);
    assert!(validate_representation(&pair, &rep).valid);
    for r in [&adj, &rep] {
        let sd = semidirect_product(&pair, r).unwrap();
        assert_eq!(sd.dim(), dim + r.dim);
        let report = validate_pair_exhaustive(&sd, SWEEP_LIMIT);
        assert!(report.sweep_ran);
        assert!(report.valid, "{:?}", report.failures);
        assert_eq!(basis_valid(&report), sweep_valid(&report));
    }
}

pub fn two_hundred_random_inputs() {
    for seed in 0..200 {
        check_random_input(seed);
    }
}

// Deformations.

pub fn term(f: &Field, n: usize, coords: &[Scalar]) -> DeformationTerm {
    DeformationTerm::from_pair_cochain(f, &PairCochain::from_coords(n, n, 2, coords).unwrap())
        .unwrap()
}

pub fn cocycles(ctx: &ComplexContext) -> Vec<Vector> {
    ctx.cohomology(2).unwrap().cocycle_basis
}

/// A valid deformation of order up to `order`, grown one random extension at
/// a time; stops early when an obstruction is nonzero.
pub fn random_valid(
    rng: &mut impl Rng,
    pair: &ResLieDerPair,
    order: usize,
) -> TruncatedDeformation {
    let f = pair.field().clone();
    let n = pair.dim();
    let ctx = adjoint_context(pair);
    let z = cocycles(&ctx);
    let len = ctx.cochain_dim(2);
    let mut d = TruncatedDeformation::from_higher_terms(
        pair,
        vec![term(&f, n, &common::combination(rng, &f, len, &z))],
    )
    .unwrap();
    while d.order() < order {
        let ob = obstruction(&d).unwrap();
        let Some(w) = ob.witness else { break };
        let next = vec_add(&w.coords(), &common::combination(rng, &f, len, &z));
        d.terms.push(term(&f, n, &next));
    }
    d
}

pub fn gf2_contexts() -> Vec<ResLieDerPair> {
    let mut pairs = common::gf2_small_pairs(1);
    pairs.extend(common::gf2_small_pairs(2));
    pairs
}

pub fn flip(rng: &mut impl Rng, d: &TruncatedDeformation) -> TruncatedDeformation {
    let f = d.field().clone();
    let n = d.dim();
    let k = rng.random_range(1..=d.order());
    let mut coords = d.terms[k].to_pair_cochain().coords();
    let i = rng.random_range(0..coords.len());
    coords[i] += Scalar::ONE;
    let mut out = d.clone();
    out.terms[k] = term(&f, n, &coords);
    out
}

pub fn order_one_validity_is_the_cocycle_condition() {
    let f = Field::gf2();
    let mut rng = common::rng(22);
    let mut valid = 0;
    for i in 0..200 {
        let pair = common::random_pair(&mut rng, &f, 1 + i % 3);
        let ctx = adjoint_context(&pair);
        let len = ctx.cochain_dim(2);
        let coords = if i % 2 == 0 {
            common::vector(&mut rng, &f, len)
        } else {
            common::combination(&mut rng, &f, len, &cocycles(&ctx))
        };
        let d = TruncatedDeformation::from_higher_terms(&pair, vec![term(&f, pair.dim(), &coords)])
            .unwrap();
        let report = check_deformation(&d).unwrap();
        let inf = infinitesimal(&d).unwrap();
        assert_eq!(report.valid, inf.is_cocycle);
        assert_eq!(inf.cochain.coords(), coords);
        valid += report.valid as usize;
    }
    assert!(valid >= 100);
}

pub fn extension_from_order_zero_gives_cocycles() {
    for f in [Field::gf2(), Field::gf4()] {
        for (_, pair) in catalog::all(&f) {
            let d = extend_deformation(&TruncatedDeformation::trivial(&pair, 0))
                .unwrap()
                .unwrap();
            assert!(infinitesimal(&d).unwrap().is_cocycle);
        }
    }
}

pub fn formal_isomorphism_shifts_infinitesimal_by_coboundary() {
    for (seed, f) in [(23, Field::gf2()), (24, Field::gf4())] {
        let mut rng = common::rng(seed);
        for i in 0..60 {
            let pair = common::random_pair(&mut rng, &f, 1 + i % 3);
            let n = pair.dim();
            let d = random_valid(&mut rng, &pair, 1 + i % 2);
            let pi = common::matrix(&mut rng, &f, n, n);
            let moved = apply_formal_isomorphism(&d, &[(1, pi.clone())]).unwrap();
            let ctx = adjoint_context(&pair);
            let pi_coords: Vector = pi.columns().concat();
            let shift = ctx.apply_differential(1, &pi_coords).unwrap();
            let lhs = infinitesimal(&moved).unwrap().cochain.coords();
            let rhs = vec_add(&infinitesimal(&d).unwrap().cochain.coords(), &shift);
            assert_eq!(lhs, rhs);
            assert!(check_deformation(&moved).unwrap().valid);
            if f.k() == 1 {
                assert_eq!(oracle::deformation_failure(&moved), None);
            }
        }
    }
}

pub fn obstructions_are_cocycles() {
    let f = Field::gf2();
    let mut rng = common::rng(25);
    for i in 0..90 {
        let pair = common::random_pair(&mut rng, &f, 1 + i % 3);
        let d = random_valid(&mut rng, &pair, 1 + i % 3);
        let ob = obstruction(&d).unwrap();
        assert!(ob.is_cocycle);
        if let Some(w) = &ob.witness {
            let ctx = adjoint_context(&pair);
            assert_eq!(
                ctx.apply_differential(2, &w.coords()).unwrap(),
                ob.cochain.coords()
            );
        }
    }
}

/// Searches every degree-2 cochain for a valid next term. Terms are linear
/// in their coordinates, so candidates are sums of unit terms.
pub fn brute_force_extends(d: &TruncatedDeformation, len: usize) -> Option<TruncatedDeformation> {
    let f = d.field().clone();
    let n = d.dim();
    let units: Vec<oracle::Term> = (0..len)
        .map(|i| oracle::Term::new(&term(&f, n, &common::gf2_vector(1 << i, len))))
        .collect();
    let mut series = oracle::Series::new(d);
    let k = d.order() + 1;
    series.terms.push(oracle::Term::zero(n));
    let found = (0u64..1 << len).find(|&m| {
        let mut t = oracle::Term::zero(n);
        for (i, u) in units.iter().enumerate() {
            if (m >> i) & 1 == 1 {
                t.xor(u);
            }
        }
        series.terms[k] = t;
        series.failure_at(k).is_none()
    })?;
    let mut e = d.clone();
    e.terms.push(term(&f, n, &common::gf2_vector(found, len)));
    Some(e)
}

pub fn extension_exists_iff_obstruction_trivial() {
    let mut checked = [0usize; 2];
    for pair in gf2_contexts() {
        let ctx = adjoint_context(&pair);
        let len = ctx.cochain_dim(2);
        let f = pair.field().clone();
        for z in span(&cocycles(&ctx), len) {
            let d1 = TruncatedDeformation::from_higher_terms(&pair, vec![term(&f, pair.dim(), &z)])
                .unwrap();
            let mut frontier = vec![d1];
            while let Some(d) = frontier.pop() {
                let ob = obstruction(&d).unwrap();
                let brute = brute_force_extends(&d, len);
                assert_eq!(ob.trivial, brute.is_some(), "order {}", d.order());
                checked[ob.trivial as usize] += 1;
                if let Some(next) = extend_deformation(&d).unwrap() {
                    assert!(check_deformation(&next).unwrap().valid);
                    assert_eq!(oracle::deformation_failure(&next), None);
                    if d.order() == 1 {
                        frontier.push(next);
                        frontier.push(brute.unwrap());
                    }
                }
            }
        }
    }
    assert!(checked[1] > 0, "{checked:?}");
}

pub fn vanishing_h3_lets_every_cocycle_reach_order_five() {
    let mut contexts: Vec<ResLieDerPair> = gf2_contexts();
    let f = Field::gf2();
    let mut rng = common::rng(26);
    for i in 0..12 {
        contexts.push(common::random_pair(&mut rng, &f, 2 + i % 2));
    }
    let mut used = 0;
    for pair in contexts {
        let ctx = adjoint_context(&pair);
        if ctx.cohomology(3).unwrap().betti != 0 {
            continue;
        }
        used += 1;
        let len = ctx.cochain_dim(2);
        let z = cocycles(&ctx);
        let mut starts: Vec<Vector> = z.clone();
        starts.extend((0..4).map(|_| common::combination(&mut rng, &f, len, &z)));
        for c in starts {
            let mut d =
                TruncatedDeformation::from_higher_terms(&pair, vec![term(&f, pair.dim(), &c)])
                    .unwrap();
            while d.order() < 5 {
                d = extend_deformation(&d)
                    .unwrap()
                    .expect("vanishing H^3 leaves no obstruction");
            }
            assert!(check_deformation(&d).unwrap().valid);
        }
    }
    assert!(used > 0);
}

// Extensions and derivation lifts.

pub fn spec(
    g: &ResLieDerPair,
    h: &ResLieDerPair,
    coords: &[reslieder::Scalar],
) -> CentralExtensionSpec {
    CentralExtensionSpec {
        g: g.clone(),
        h: h.clone(),
        cocycle: PairCochain::from_coords(g.dim(), h.dim(), 2, coords).unwrap(),
    }
}

pub fn random_section(rng: &mut impl Rng, ext: &BuiltExtension) -> (Matrix, Matrix) {
    let f = ext.g.field();
    let kappa = common::matrix(rng, f, ext.h.dim(), ext.g.dim());
    let shift = ext.inclusion.mul(&kappa).unwrap();
    (ext.canonical_section.add(&shift).unwrap(), kappa)
}

/// Random `g` (dimension 1..=3), `h` strongly abelian (1..=2) and a random
/// cocycle of the extension complex.
pub fn random_extension(
    rng: &mut impl Rng,
    f: &Field,
    i: usize,
) -> (ResLieDerPair, ResLieDerPair, ComplexContext, Vector) {
    let g = common::random_pair(rng, f, 1 + i % 3);
    let hd = 1 + i % 2;
    let h = common::strongly_abelian(f, hd, common::matrix(rng, f, hd, hd));
    let ctx = extension_context(&g, &h, ComplexKind::ResLieDer);
    let z = ctx.cohomology(2).unwrap().cocycle_basis;
    let c = common::combination(rng, f, ctx.cochain_dim(2), &z);
    (g, h, ctx, c)
}

pub fn build_and_extract_round_trip() {
    for (seed, f) in [(31, Field::gf2()), (32, Field::gf4())] {
        let mut rng = common::rng(seed);
        for i in 0..40 {
            let (g, h, _, c) = random_extension(&mut rng, &f, i);
            let s = spec(&g, &h, &c);
            let ext = build(&s).unwrap();
            assert!(validate_pair(&ext.ghat).valid);
            assert_eq!(
                extract_cocycle(&ext, &ext.canonical_section).unwrap(),
                s.cocycle
            );
        }
    }
}

pub fn sections_change_the_cocycle_by_a_coboundary() {
    for (seed, f) in [(33, Field::gf2()), (34, Field::gf4())] {
        let mut rng = common::rng(seed);
        for i in 0..12 {
            let (g, h, ctx, c) = random_extension(&mut rng, &f, i);
            let ext = build(&spec(&g, &h, &c)).unwrap();
            let theta1 = ctx.reslieder_differential(1);
            for _ in 0..50 {
                let (s, kappa) = random_section(&mut rng, &ext);
                let moved = extract_cocycle(&ext, &s).unwrap().coords();
                let diff = vec_add(&moved, &c);
                assert!(theta1.solve(&diff).unwrap().is_some());
                assert_eq!(diff, theta1.mul_vec(&kappa.columns().concat()).unwrap());
            }
        }
    }
}

pub fn bad_sections_are_rejected() {
    let f = Field::gf2();
    let mut rng = common::rng(35);
    let (g, h, _, c) = random_extension(&mut rng, &f, 1);
    let ext = build(&spec(&g, &h, &c)).unwrap();
    let bad = Matrix::zeros(&f, ext.ghat.dim(), g.dim());
    assert!(matches!(
        extract_cocycle(&ext, &bad),
        Err(Error::InvalidSection(_))
    ));
}

/// `g ⊕ h` assembled directly from the cochain, as bit masks.
pub fn raw_extension(g: &ResLieDerPair, h: &ResLieDerPair, c: &PairCochain) -> (Alg, Vec<u32>) {
    let (n, hd) = (g.dim(), h.dim());
    let t = n + hd;
    let base = Alg::new(&g.algebra);
    let mut alg = Alg {
        n: t,
        c: vec![0; t * t],
        q: vec![0; t],
    };
    for a in 0..n {
        for b in 0..n {
            let mut v = base.c[a * n + b];
            if a != b {
                v |= oracle::vector_mask(&c.top.phi(&[a.min(b), a.max(b)])) << n;
            }
            alg.c[a * t + b] = v;
        }
        alg.q[a] = base.q[a] | oracle::vector_mask(&c.top.omega(a, &[])) << n;
    }
    let dg = oracle::matrix_columns(&g.derivation);
    let dh = oracle::matrix_columns(&h.derivation);
    let low = c.low.as_ref().unwrap();
    let mut d: Vec<u32> = (0..n)
        .map(|a| dg[a] | oracle::vector_mask(&low.phi(&[a])) << n)
        .collect();
    d.extend(dh.iter().map(|v| v << n));
    (alg, d)
}

pub fn build_accepts_exactly_the_cocycles() {
    let f = Field::gf2();
    let mut gs = common::gf2_small_pairs(1);
    gs.extend(common::gf2_small_pairs(2));
    let mut counts = [0usize; 2];
    for g in &gs {
        for hd in 1..=2 {
            for dh in common::gf2_matrices(hd, hd) {
                let h = common::strongly_abelian(&f, hd, dh);
                let ctx = extension_context(g, &h, ComplexKind::ResLieDer);
                let len = ctx.cochain_dim(2);
                for m in 0u64..1 << len {
                    let coords = common::gf2_vector(m, len);
                    let s = spec(g, &h, &coords);
                    let cocycle = ctx.is_cocycle(2, &coords).unwrap();
                    let (alg, d) = raw_extension(g, &h, &s.cocycle);
                    let raw_valid = oracle::algebra_is_valid(&alg)
                        && oracle::is_restricted_derivation(&alg, &d);
                    assert_eq!(cocycle, raw_valid);
                    match build(&s) {
                        Ok(ext) => {
                            assert!(cocycle);
                            assert!(validate_pair(&ext.ghat).valid);
                        }
                        Err(Error::NotACocycle(_)) => assert!(!cocycle),
                        Err(e) => panic!("unexpected error {e}"),
                    }
                    counts[cocycle as usize] += 1;
                }
            }
        }
    }
    assert!(counts[0] > 0 && counts[1] > 0);
}

/// All maps `x + h -> x + nu(x) + h` between the two extensions.
pub fn brute_force_isomorphic(e1: &BuiltExtension, e2: &BuiltExtension) -> bool {
    let (n, hd) = (e1.g.dim(), e1.h.dim());
    common::gf2_matrices(hd, n).into_iter().any(|nu| {
        let mut map = Matrix::identity(e1.g.field(), n + hd);
        map.set_block(n, 0, &nu);
        is_extension_morphism(e1, e2, &map)
    })
}

pub fn cohomologous_cocycles_give_isomorphic_extensions() {
    let f = Field::gf2();
    let mut rng = common::rng(36);
    let mut seen = [0usize; 2];
    for i in 0..60 {
        let (g, h, ctx, c1) = random_extension(&mut rng, &f, i);
        let nu = common::vector(&mut rng, &f, ctx.cochain_dim(1));
        let c2 = if i % 2 == 0 {
            vec_add(&c1, &ctx.apply_differential(1, &nu).unwrap())
        } else {
            let z = ctx.cohomology(2).unwrap().cocycle_basis;
            common::combination(&mut rng, &f, ctx.cochain_dim(2), &z)
        };
        let s1 = spec(&g, &h, &c1);
        let s2 = spec(&g, &h, &c2);
        let cohomologous = ctx
            .coboundary_witness(2, &vec_add(&c1, &c2))
            .unwrap()
            .is_some();
        let e1 = build(&s1).unwrap();
        let e2 = build(&s2).unwrap();
        match extensions_isomorphic(&g, &h, &s1.cocycle, &s2.cocycle).unwrap() {
            Some(iso) => {
                assert!(cohomologous);
                assert!(is_extension_morphism(&e1, &e2, &iso.map));
            }
            None => {
                assert!(!cohomologous);
                assert!(!brute_force_isomorphic(&e1, &e2));
            }
        }
        if i % 2 == 0 {
            assert!(cohomologous);
        }
        seen[cohomologous as usize] += 1;
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}

pub fn all_derivations(ders: &RestrictedDerivations, n: usize) -> Vec<Matrix> {
    let f = &ders.field;
    let mut out = vec![Matrix::zeros(f, n, n)];
    for b in &ders.basis {
        let more: Vec<Matrix> = out.iter().map(|m| m.add(b).unwrap()).collect();
        out.extend(more);
    }
    out
}

pub fn distinct_algebras() -> Vec<RestrictedLieAlgebra> {
    let mut out: Vec<RestrictedLieAlgebra> = Vec::new();
    for n in 1..=2 {
        for p in common::gf2_small_pairs(n) {
            if !out.contains(&p.algebra) {
                out.push(p.algebra);
            }
        }
    }
    out
}

pub fn span(basis: &[Vector], len: usize) -> Vec<Vector> {
    let mut out = vec![vec![reslieder::Scalar::ZERO; len]];
    for b in basis {
        let more: Vec<Vector> = out.iter().map(|v| vec_add(v, b)).collect();
        out.extend(more);
    }
    out
}

/// Lifts `[[D_g, 0], [gamma, D_h]]` over every `gamma`.
pub fn brute_force_lift(ext: &AlgebraExtension, d_g: &Matrix, d_h: &Matrix) -> bool {
    let (n, hd) = (ext.g.dim(), ext.h_dim);
    let alg = Alg::new(&ext.ghat);
    let dg = oracle::matrix_columns(d_g);
    let dh = oracle::matrix_columns(d_h);
    common::gf2_matrices(hd, n).iter().any(|gamma| {
        let gc = oracle::matrix_columns(gamma);
        let mut d: Vec<u32> = (0..n).map(|a| dg[a] | gc[a] << n).collect();
        d.extend(dh.iter().map(|v| v << n));
        oracle::is_restricted_derivation(&alg, &d)
    })
}

pub fn check_lift(ext: &AlgebraExtension, d_g: &Matrix, d_h: &Matrix, lift: &ResLieDerPair) {
    assert!(validate_pair(lift).valid);
    let theta = ext.projection();
    let incl = ext.inclusion();
    assert_eq!(
        theta.mul(&lift.derivation).unwrap(),
        d_g.mul(&theta).unwrap()
    );
    assert_eq!(lift.derivation.mul(&incl).unwrap(), incl.mul(d_h).unwrap());
}

pub fn lift_exists_iff_obstruction_trivial() {
    let mut counts = [0usize; 2];
    for g in distinct_algebras() {
        let n = g.dim();
        let ders = all_derivations(&restricted_derivations(&g), n);
        for hd in 1..=2 {
            let ctx = star2_context(&g, hd);
            let z = ctx.cohomology(2).unwrap().cocycle_basis;
            for c in span(&z, ctx.cochain_dim(2)) {
                let ext = AlgebraExtension::from_cocycle(
                    &g,
                    hd,
                    &Cochain::from_coords(ctx.shape(2), c).unwrap(),
                )
                .unwrap();
                for d_g in &ders {
                    for d_h in common::gf2_matrices(hd, hd) {
                        let ob = derivation_obstruction(&ext, d_g, &d_h, None).unwrap();
                        assert!(ob.is_cocycle);
                        let lift = lift_derivation_pair(&ext, d_g, &d_h).unwrap();
                        assert_eq!(lift.is_some(), ob.trivial);
                        assert_eq!(ob.trivial, brute_force_lift(&ext, d_g, &d_h));
                        if let Some(l) = &lift {
                            check_lift(&ext, d_g, &d_h, l);
                        }
                        counts[ob.trivial as usize] += 1;
                    }
                }
            }
        }
    }
    assert!(counts[0] > 0 && counts[1] > 0, "{counts:?}");
}

pub fn section_change_shifts_the_obstruction() {
    for (seed, f) in [(37, Field::gf2()), (38, Field::gf4())] {
        let mut rng = common::rng(seed);
        for i in 0..40 {
            let g = common::random_pair(&mut rng, &f, 1 + i % 3);
            let n = g.dim();
            let hd = 1 + i % 2;
            let ctx = star2_context(&g.algebra, hd);
            let z = ctx.cohomology(2).unwrap().cocycle_basis;
            let c = common::combination(&mut rng, &f, ctx.cochain_dim(2), &z);
            let ext = AlgebraExtension::from_cocycle(
                &g.algebra,
                hd,
                &Cochain::from_coords(ctx.shape(2), c).unwrap(),
            )
            .unwrap();
            let d_h = common::matrix(&mut rng, &f, hd, hd);
            let kappa = common::matrix(&mut rng, &f, hd, n);
            let section = ext
                .canonical_section()
                .add(&ext.inclusion().mul(&kappa).unwrap())
                .unwrap();
            let ob0 = derivation_obstruction(&ext, &g.derivation, &d_h, None).unwrap();
            let ob1 = derivation_obstruction(&ext, &g.derivation, &d_h, Some(&section)).unwrap();
            assert!(ob0.is_cocycle && ob1.is_cocycle);
            let k = d_h
                .mul(&kappa)
                .unwrap()
                .add(&kappa.mul(&g.derivation).unwrap())
                .unwrap();
            let shift = ctx.apply_differential(1, &k.columns().concat()).unwrap();
            assert_eq!(vec_add(&ob0.cochain.coords, &ob1.cochain.coords), shift);
        }
    }
}

pub fn phi_vanishes_iff_every_extension_lifts() {
    let mut seen = [0usize; 2];
    for g in distinct_algebras() {
        let n = g.dim();
        let ders = all_derivations(&restricted_derivations(&g), n);
        for hd in 1..=2 {
            for d_g in &ders {
                for d_h in common::gf2_matrices(hd, hd) {
                    let phi = phi_action(&g, hd, d_g, &d_h).unwrap();
                    let all_lift = phi.class_representatives.iter().all(|r| {
                        let ext = AlgebraExtension::from_cocycle(&g, hd, r).unwrap();
                        lift_derivation_pair(&ext, d_g, &d_h).unwrap().is_some()
                    });
                    assert_eq!(phi.is_zero, all_lift);
                    seen[phi.is_zero as usize] += 1;
                }
            }
        }
    }
    assert!(seen[0] > 0 && seen[1] > 0, "{seen:?}");
}
