//! Brute-force reference computations over GF(2), written against the
//! defining formulas on elements rather than the library's matrix assembly.
//! Elements of g and V are bit masks.

use std::collections::HashMap;

use reslieder::algebra::{ResLieDerPair, RestrictedLieAlgebra, RestrictedRepresentation};
use reslieder::deformation::{DeformationTerm, TruncatedDeformation};
use reslieder::linalg::Matrix;
use reslieder::Scalar;

fn bit(s: Scalar) -> u32 {
    assert!(s.0 <= 1, "oracle works over GF(2) only");
    s.0 as u32
}

fn mask(v: &[Scalar]) -> u32 {
    v.iter()
        .enumerate()
        .fold(0, |acc, (i, s)| acc | (bit(*s) << i))
}

fn columns(m: &Matrix) -> Vec<u32> {
    (0..m.cols()).map(|c| mask(&m.column(c))).collect()
}

fn bits(mut x: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (x != 0).then(|| {
            let i = x.trailing_zeros() as usize;
            x &= x - 1;
            i
        })
    })
}

fn apply(cols: &[u32], x: u32) -> u32 {
    bits(x).fold(0, |acc, i| acc ^ cols[i])
}

/// Structure constants of an algebra over GF(2).
#[derive(Clone)]
pub struct Alg {
    pub n: usize,
    pub c: Vec<u32>,
    pub q: Vec<u32>,
}

impl Alg {
    pub fn new(alg: &RestrictedLieAlgebra) -> Self {
        let n = alg.dim();
        let mut c = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                c[a * n + b] = mask(alg.bracket_basis(a, b));
            }
        }
        Alg {
            n,
            c,
            q: (0..n).map(|a| mask(alg.square_basis(a))).collect(),
        }
    }

    pub fn bracket(&self, x: u32, y: u32) -> u32 {
        let mut r = 0;
        for a in bits(x) {
            for b in bits(y) {
                r ^= self.c[a * self.n + b];
            }
        }
        r
    }

    pub fn square(&self, x: u32) -> u32 {
        let mut r = 0;
        for a in bits(x) {
            r ^= self.q[a];
            for b in bits(x).filter(|&b| b > a) {
                r ^= self.c[a * self.n + b];
            }
        }
        r
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..1u32 << self.n
    }
}

/// Pair plus module data.
pub struct Ctx {
    pub g: Alg,
    pub d: Vec<u32>,
    pub m: usize,
    pub rho: Vec<Vec<u32>>,
    pub eta: Vec<u32>,
}

impl Ctx {
    pub fn new(pair: &ResLieDerPair, rep: &RestrictedRepresentation) -> Self {
        Ctx {
            g: Alg::new(&pair.algebra),
            d: columns(&pair.derivation),
            m: rep.dim,
            rho: rep.rho.iter().map(columns).collect(),
            eta: columns(&rep.eta),
        }
    }

    fn rho(&self, x: u32, v: u32) -> u32 {
        bits(x).fold(0, |acc, a| acc ^ apply(&self.rho[a], v))
    }
}

/// A cochain as tables on basis arguments.
#[derive(Clone, Default)]
struct Co {
    phi: HashMap<Vec<usize>, u32>,
    omega: HashMap<(usize, Vec<usize>), u32>,
}

/// Expands each argument into its basis indices; calls `f` on every
/// distinct-index choice, sorted.
fn expand(args: &[u32], f: &mut impl FnMut(&[usize])) {
    fn go(args: &[u32], chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if chosen.len() == args.len() {
            let mut t = chosen.clone();
            t.sort_unstable();
            f(&t);
            return;
        }
        for b in bits(args[chosen.len()]) {
            if !chosen.contains(&b) {
                chosen.push(b);
                go(args, chosen, f);
                chosen.pop();
            }
        }
    }
    go(args, &mut Vec::new(), f);
}

impl Co {
    fn phi(&self, args: &[u32]) -> u32 {
        let mut r = 0;
        expand(args, &mut |t| r ^= self.phi.get(t).copied().unwrap_or(0));
        r
    }

    fn omega(&self, x: u32, zs: &[u32]) -> u32 {
        let mut r = 0;
        for a in bits(x) {
            expand(zs, &mut |t| {
                r ^= self.omega.get(&(a, t.to_vec())).copied().unwrap_or(0)
            });
            for b in bits(x).filter(|&b| b > a) {
                let mut args = vec![1 << a, 1 << b];
                args.extend_from_slice(zs);
                r ^= self.phi(&args);
            }
        }
        r
    }
}

fn tuples(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
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
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

fn without(zs: &[u32], skip: &[usize]) -> Vec<u32> {
    zs.iter()
        .enumerate()
        .filter(|(i, _)| !skip.contains(i))
        .map(|(_, z)| *z)
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Key {
    Phi,
    Omega(usize),
}

/// Coordinates of a degree-`deg` cochain: `(key, module index)`.
fn keys(n: usize, m: usize, deg: usize) -> Vec<(Key, Vec<usize>, usize)> {
    let mut out = Vec::new();
    for mm in 0..m {
        for t in tuples(n, deg) {
            out.push((Key::Phi, t, mm));
        }
        if deg >= 2 {
            for a in 0..n {
                for t in tuples(n, deg - 2) {
                    out.push((Key::Omega(a), t, mm));
                }
            }
        }
    }
    out
}

fn unit(key: &(Key, Vec<usize>, usize)) -> Co {
    let mut c = Co::default();
    match key.0 {
        Key::Phi => {
            c.phi.insert(key.1.clone(), 1 << key.2);
        }
        Key::Omega(a) => {
            c.omega.insert((a, key.1.clone()), 1 << key.2);
        }
    }
    c
}

fn read(c: &Co, keys: &[(Key, Vec<usize>, usize)]) -> Vec<bool> {
    keys.iter()
        .map(|(k, t, mm)| {
            let args: Vec<u32> = t.iter().map(|&i| 1 << i).collect();
            let v = match k {
                Key::Phi => c.phi(&args),
                Key::Omega(a) => c.omega(1 << a, &args),
            };
            (v >> mm) & 1 == 1
        })
        .collect()
}

impl Ctx {
    /// `d` on a degree-`deg` cochain, as element-level functions.
    fn d(&self, c: &Co, deg: usize) -> Co {
        let n = self.g.n;
        let mut out = Co::default();
        for t in tuples(n, deg + 1) {
            let zs: Vec<u32> = t.iter().map(|&i| 1 << i).collect();
            let mut v = 0;
            for i in 0..zs.len() {
                v ^= self.rho(zs[i], c.phi(&without(&zs, &[i])));
            }
            for i in 0..zs.len() {
                for j in i + 1..zs.len() {
                    let mut args = vec![self.g.bracket(zs[i], zs[j])];
                    args.extend(without(&zs, &[i, j]));
                    v ^= c.phi(&args);
                }
            }
            out.phi.insert(t, v);
        }
        if deg >= 1 {
            for a in 0..n {
                for t in tuples(n, deg - 1) {
                    let x = 1u32 << a;
                    let zs: Vec<u32> = t.iter().map(|&i| 1 << i).collect();
                    let mut xz = vec![x];
                    xz.extend_from_slice(&zs);
                    let mut v = self.rho(x, c.phi(&xz));
                    let mut sq = xz.clone();
                    sq[0] = self.g.square(x);
                    v ^= c.phi(&sq);
                    for i in 0..zs.len() {
                        let mut args = vec![self.g.bracket(x, zs[i]), x];
                        args.extend(without(&zs, &[i]));
                        v ^= c.phi(&args);
                    }
                    if deg >= 2 {
                        for i in 0..zs.len() {
                            v ^= self.rho(zs[i], c.omega(x, &without(&zs, &[i])));
                        }
                        for i in 0..zs.len() {
                            for j in i + 1..zs.len() {
                                let mut rest = vec![self.g.bracket(zs[i], zs[j])];
                                rest.extend(without(&zs, &[i, j]));
                                v ^= c.omega(x, &rest);
                            }
                        }
                    }
                    out.omega.insert((a, t), v);
                }
            }
        }
        out
    }

    fn delta(&self, c: &Co, deg: usize) -> Co {
        let n = self.g.n;
        let mut out = Co::default();
        for t in tuples(n, deg) {
            let zs: Vec<u32> = t.iter().map(|&i| 1 << i).collect();
            let mut v = apply(&self.eta, c.phi(&zs));
            for i in 0..zs.len() {
                let mut args = zs.clone();
                args[i] = apply(&self.d, zs[i]);
                v ^= c.phi(&args);
            }
            out.phi.insert(t, v);
        }
        if deg >= 2 {
            for a in 0..n {
                for t in tuples(n, deg - 2) {
                    let x = 1u32 << a;
                    let zs: Vec<u32> = t.iter().map(|&i| 1 << i).collect();
                    let mut v = apply(&self.eta, c.omega(x, &zs));
                    for i in 0..zs.len() {
                        let mut args = zs.clone();
                        args[i] = apply(&self.d, zs[i]);
                        v ^= c.omega(x, &args);
                    }
                    let mut args = vec![x, apply(&self.d, x)];
                    args.extend_from_slice(&zs);
                    v ^= c.phi(&args);
                    out.omega.insert((a, t), v);
                }
            }
        }
        out
    }

    /// Column images of `d^deg` in the oracle's own coordinates.
    fn star2_columns(&self, deg: usize) -> Vec<Vec<bool>> {
        let (n, m) = (self.g.n, self.m);
        let out_keys = keys(n, m, deg + 1);
        keys(n, m, deg)
            .iter()
            .map(|k| read(&self.d(&unit(k), deg), &out_keys))
            .collect()
    }

    /// Column images of the pair differential out of degree `deg >= 1`.
    fn reslieder_columns(&self, deg: usize) -> Vec<Vec<bool>> {
        let (n, m) = (self.g.n, self.m);
        let top_out = keys(n, m, deg + 1);
        let low_out = keys(n, m, deg);
        let image = |top: &Co, low: Option<&Co>| -> Vec<bool> {
            let mut v = read(&self.d(top, deg), &top_out);
            let mut l = self.delta(top, deg);
            if let Some(low) = low {
                let dl = self.d(low, deg - 1);
                l.phi = merge(&l.phi, &dl.phi);
                l.omega = merge(&l.omega, &dl.omega);
            }
            v.extend(read(&l, &low_out));
            v
        };
        let mut cols: Vec<Vec<bool>> = keys(n, m, deg)
            .iter()
            .map(|k| image(&unit(k), None))
            .collect();
        if deg >= 2 {
            for k in keys(n, m, deg - 1) {
                cols.push(image(&Co::default(), Some(&unit(&k))));
            }
        }
        cols
    }

    pub fn star2_dim(&self, deg: usize) -> usize {
        keys(self.g.n, self.m, deg).len()
    }

    pub fn star2_rank(&self, deg: usize) -> usize {
        rank(self.star2_columns(deg))
    }

    pub fn reslieder_dim(&self, deg: usize) -> usize {
        match deg {
            0 => 0,
            1 => self.star2_dim(1),
            _ => self.star2_dim(deg) + self.star2_dim(deg - 1),
        }
    }

    pub fn reslieder_rank(&self, deg: usize) -> usize {
        if deg == 0 {
            0
        } else {
            rank(self.reslieder_columns(deg))
        }
    }

    pub fn star2_betti(&self, deg: usize) -> usize {
        let prev = if deg == 0 {
            0
        } else {
            self.star2_rank(deg - 1)
        };
        self.star2_dim(deg) - self.star2_rank(deg) - prev
    }

    pub fn reslieder_betti(&self, deg: usize) -> usize {
        let prev = if deg <= 1 {
            0
        } else {
            self.reslieder_rank(deg - 1)
        };
        self.reslieder_dim(deg) - self.reslieder_rank(deg) - prev
    }
}

fn merge<K: Clone + Eq + std::hash::Hash>(
    a: &HashMap<K, u32>,
    b: &HashMap<K, u32>,
) -> HashMap<K, u32> {
    let mut out = a.clone();
    for (k, v) in b {
        *out.entry(k.clone()).or_insert(0) ^= v;
    }
    out
}

/// Row reduction on dense boolean vectors.
pub fn rank(mut vs: Vec<Vec<bool>>) -> usize {
    let mut r = 0;
    let len = vs.first().map_or(0, Vec::len);
    for col in 0..len {
        let Some(p) = (r..vs.len()).find(|&i| vs[i][col]) else {
            continue;
        };
        vs.swap(r, p);
        let pivot = vs[r].clone();
        for (i, v) in vs.iter_mut().enumerate() {
            if i != r && v[col] {
                for (x, y) in v.iter_mut().zip(&pivot) {
                    *x ^= y;
                }
            }
        }
        r += 1;
    }
    r
}

/// True when `d` (column images) is a restricted derivation, checked on all
/// elements.
pub fn is_restricted_derivation(g: &Alg, d: &[u32]) -> bool {
    for x in g.elements() {
        if apply(d, g.square(x)) != g.bracket(x, apply(d, x)) {
            return false;
        }
        for y in g.elements() {
            if apply(d, g.bracket(x, y)) != g.bracket(apply(d, x), y) ^ g.bracket(x, apply(d, y)) {
                return false;
            }
        }
    }
    true
}

/// Counts restricted derivations by trying every matrix.
pub fn count_restricted_derivations(alg: &RestrictedLieAlgebra) -> u64 {
    let g = Alg::new(alg);
    let n = g.n;
    let mut count = 0;
    for m in 0u64..1 << (n * n) {
        let d: Vec<u32> = (0..n)
            .map(|c| ((m >> (c * n)) & ((1 << n) - 1)) as u32)
            .collect();
        if is_restricted_derivation(&g, &d) {
            count += 1;
        }
    }
    count
}

/// One term of a deformation as bit masks.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Term {
    mu: Vec<u32>,
    sigma: Vec<u32>,
    d: Vec<u32>,
}

impl Term {
    pub fn new(t: &DeformationTerm) -> Self {
        Term {
            mu: t.mu.iter().map(|v| mask(v)).collect(),
            sigma: t.sigma.iter().map(|v| mask(v)).collect(),
            d: columns(&t.derivation),
        }
    }

    pub fn zero(n: usize) -> Self {
        Term {
            mu: vec![0; n * n],
            sigma: vec![0; n],
            d: vec![0; n],
        }
    }

    pub fn xor(&mut self, other: &Term) {
        for (a, b) in self.mu.iter_mut().zip(&other.mu) {
            *a ^= b;
        }
        for (a, b) in self.sigma.iter_mut().zip(&other.sigma) {
            *a ^= b;
        }
        for (a, b) in self.d.iter_mut().zip(&other.d) {
            *a ^= b;
        }
    }

    fn mu(&self, n: usize, x: u32, y: u32) -> u32 {
        let mut r = 0;
        for a in bits(x) {
            for b in bits(y) {
                r ^= self.mu[a * n + b];
            }
        }
        r
    }

    fn sigma(&self, n: usize, x: u32) -> u32 {
        let mut r = 0;
        for a in bits(x) {
            r ^= self.sigma[a];
            for b in bits(x).filter(|&b| b > a) {
                r ^= self.mu[a * n + b];
            }
        }
        r
    }
}

/// A deformation as bit masks, term 0 first.
pub struct Series {
    pub n: usize,
    pub terms: Vec<Term>,
}

impl Series {
    pub fn new(d: &TruncatedDeformation) -> Self {
        Series {
            n: d.dim(),
            terms: d.terms.iter().map(Term::new).collect(),
        }
    }

    /// Checks the coefficient of `t^k` in the six deformation equations on
    /// every element tuple.
    pub fn failure_at(&self, k: usize) -> Option<&'static str> {
        let n = self.n;
        let terms = &self.terms;
        let split = |f: &mut dyn FnMut(&Term, &Term)| {
            for i in 0..=k {
                f(&terms[i], &terms[k - i]);
            }
        };
        let els = 0..1u32 << n;
        for x in els.clone() {
            for y in els.clone() {
                for z in els.clone() {
                    let mut v = 0;
                    split(&mut |a, b| {
                        v ^= a.mu(n, x, b.mu(n, y, z))
                            ^ a.mu(n, y, b.mu(n, z, x))
                            ^ a.mu(n, z, b.mu(n, x, y));
                    });
                    if v != 0 {
                        return Some("jacobi");
                    }
                }
                let mut v = 0;
                split(&mut |a, b| v ^= a.mu(n, b.sigma(n, x), y) ^ a.mu(n, x, b.mu(n, x, y)));
                if v != 0 {
                    return Some("two-map-compat");
                }
                let t = &terms[k];
                if t.sigma(n, x ^ y) != t.sigma(n, x) ^ t.sigma(n, y) ^ t.mu(n, x, y) {
                    return Some("polarization");
                }
                let mut v = 0;
                split(&mut |a, b| {
                    v ^= apply(&a.d, b.mu(n, x, y))
                        ^ b.mu(n, apply(&a.d, x), y)
                        ^ b.mu(n, x, apply(&a.d, y))
                });
                if v != 0 {
                    return Some("derivation");
                }
            }
            // Over GF(2) the scaling equation only sees a in {0, 1}.
            if terms[k].sigma(n, 0) != 0 {
                return Some("scaling");
            }
            let mut v = 0;
            split(&mut |a, b| v ^= apply(&a.d, b.sigma(n, x)) ^ b.mu(n, x, apply(&a.d, x)));
            if v != 0 {
                return Some("restricted-der");
            }
        }
        None
    }
}

/// The first failing `(equation, order)` of a deformation, checked on every
/// element tuple.
pub fn deformation_failure(d: &TruncatedDeformation) -> Option<(&'static str, usize)> {
    let s = Series::new(d);
    (0..s.terms.len()).find_map(|k| s.failure_at(k).map(|e| (e, k)))
}

/// Bracket alternating, Jacobi and `[x^[2], y] = [x, [x, y]]` on all elements.
pub fn algebra_is_valid(g: &Alg) -> bool {
    let n = g.n;
    for a in 0..n {
        if g.c[a * n + a] != 0 || (0..n).any(|b| g.c[a * n + b] != g.c[b * n + a]) {
            return false;
        }
    }
    for x in g.elements() {
        for y in g.elements() {
            if g.bracket(g.square(x), y) != g.bracket(x, g.bracket(x, y)) {
                return false;
            }
        }
    }
    // Jacobi is trilinear, so basis triples suffice.
    let e = |a: usize| 1u32 << a;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let (x, y, z) = (e(a), e(b), e(c));
                let j = g.bracket(x, g.bracket(y, z))
                    ^ g.bracket(y, g.bracket(z, x))
                    ^ g.bracket(z, g.bracket(x, y));
                if j != 0 {
                    return false;
                }
            }
        }
    }
    true
}

/// The column masks of a library matrix.
pub fn matrix_columns(m: &Matrix) -> Vec<u32> {
    columns(m)
}

/// The bit mask of a GF(2) vector.
pub fn vector_mask(v: &[Scalar]) -> u32 {
    mask(v)
}
