//! Dense graded-piece linear algebra over prime fields.
//!
//! Everything here works one weighted degree at a time with plain Gaussian
//! elimination, and shares no code with the engine. Polynomials are raw term
//! lists `(exponents, coefficient)`.

use std::collections::{BTreeMap, HashMap};

pub type Term = (Vec<u32>, u64);
pub type Poly = Vec<Term>;

fn inv(a: u64, p: u64) -> u64 {
    let (mut r, mut e, mut b) = (1u64, p - 2, a % p);
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Row-reduced echelon form built incrementally.
#[derive(Clone, Debug)]
struct Echelon {
    p: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(p: u64) -> Self {
        Echelon {
            p,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let mut v = v.to_vec();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let a = v[c];
            if a != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    *x = (*x + (self.p - a) * r) % self.p;
                }
            }
        }
        v
    }

    /// Adds `v` to the span; returns false when it was already there.
    fn insert(&mut self, v: &[u64]) -> bool {
        let mut v = self.reduce(v);
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let s = inv(v[c], self.p);
        for x in v.iter_mut() {
            *x = *x * s % self.p;
        }
        for row in &mut self.rows {
            let a = row[c];
            if a != 0 {
                for (x, y) in row.iter_mut().zip(&v) {
                    *x = (*x + (self.p - a) * y) % self.p;
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(c);
        true
    }
}

/// Null space of the linear map whose columns are `cols` (each of length `nrows`).
fn kernel(p: u64, nrows: usize, cols: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let n = cols.len();
    // augmented rows [col | e_i]; a zero left half gives a kernel vector
    let mut ech = Echelon::new(p);
    let mut out = Vec::new();
    for (i, c) in cols.iter().enumerate() {
        let mut v = c.clone();
        v.resize(nrows + n, 0);
        v[nrows + i] = 1;
        let r = ech.reduce(&v);
        if r[..nrows].iter().all(|&x| x == 0) {
            out.push(r[nrows..].to_vec());
        } else {
            ech.insert(&r);
        }
    }
    out
}

/// One weighted degree of `S = F_p[x]` and of `R = S/I`.
#[derive(Clone, Debug)]
struct Piece {
    monos: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
    ideal: Echelon,
    /// Monomial indices forming a basis of `R_d`.
    basis: Vec<usize>,
}

/// A graded quotient `F_p[x_1..x_n]/I` with all pieces precomputed through `dmax`.
#[derive(Clone, Debug)]
pub struct GradedRing {
    p: u64,
    weights: Vec<u32>,
    dmax: u32,
    pieces: Vec<Piece>,
}

fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn go(w: &[u32], i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=left / w[i] {
            cur.push(e);
            go(w, i + 1, left - e * w[i], cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, 0, d, &mut Vec::new(), &mut out);
    out
}

fn degree(weights: &[u32], m: &[u32]) -> u32 {
    m.iter().zip(weights).map(|(e, w)| e * w).sum()
}

fn mono_mul(a: &[u32], b: &[u32]) -> Vec<u32> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl GradedRing {
    /// `gens` must be homogeneous for `weights`.
    pub fn new(p: u64, weights: Vec<u32>, gens: &[Poly], dmax: u32) -> Self {
        let mut pieces = Vec::new();
        for d in 0..=dmax {
            let monos = monomials_of_degree(&weights, d);
            let index: HashMap<Vec<u32>, usize> = monos.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
            let mut ideal = Echelon::new(p);
            for g in gens {
                let Some(gd) = g.first().map(|t| degree(&weights, &t.0)) else {
                    continue;
                };
                assert!(
                    g.iter().all(|t| degree(&weights, &t.0) == gd),
                    "generator is not homogeneous"
                );
                if gd > d {
                    continue;
                }
                for u in monomials_of_degree(&weights, d - gd) {
                    let mut v = vec![0; monos.len()];
                    for (m, c) in g {
                        let i = index[&mono_mul(m, &u)];
                        v[i] = (v[i] + c % p) % p;
                    }
                    ideal.insert(&v);
                }
            }
            let basis = (0..monos.len()).filter(|i| !ideal.pivots.contains(i)).collect();
            pieces.push(Piece {
                monos,
                index,
                ideal,
                basis,
            });
        }
        GradedRing {
            p,
            weights,
            dmax,
            pieces,
        }
    }

    pub fn dmax(&self) -> u32 {
        self.dmax
    }

    /// `dim_k R_d` for `d ≤ dmax`.
    pub fn hilbert(&self, d: u32) -> usize {
        self.pieces[d as usize].basis.len()
    }

    /// `dim_k R` when `R_d` vanishes for `max weight` consecutive degrees
    /// within the computed range (so for all larger `d`).
    pub fn length(&self) -> Option<usize> {
        let run = *self.weights.iter().max().unwrap_or(&1) as usize;
        let dims: Vec<usize> = (0..=self.dmax).map(|d| self.hilbert(d)).collect();
        let start = (0..dims.len()).find(|&d| d + run <= dims.len() && dims[d..d + run].iter().all(|&x| x == 0))?;
        Some(dims[..start].iter().sum())
    }

    /// Coordinates in the basis of `R_d` of a polynomial given on the
    /// monomials of `S_d`.
    fn coords(&self, d: u32, v: &[u64]) -> Vec<u64> {
        let piece = &self.pieces[d as usize];
        let r = piece.ideal.reduce(v);
        piece.basis.iter().map(|&i| r[i]).collect()
    }

    /// `u · a` with `a ∈ R_a` in basis coordinates, as coordinates in `R_(a + deg u)`.
    fn mul_mono(&self, a_deg: u32, a: &[u64], u: &[u32]) -> Option<Vec<u64>> {
        let d = a_deg + degree(&self.weights, u);
        if d > self.dmax {
            return None;
        }
        let src = &self.pieces[a_deg as usize];
        let dst = &self.pieces[d as usize];
        let mut v = vec![0; dst.monos.len()];
        for (&bi, &c) in src.basis.iter().zip(a) {
            if c != 0 {
                let i = dst.index[&mono_mul(&src.monos[bi], u)];
                v[i] = (v[i] + c) % self.p;
            }
        }
        Some(self.coords(d, &v))
    }

    /// `dim_k (m/m^2)_d` for `1 ≤ d ≤ dmax`: minimal generators of the
    /// maximal ideal by degree.
    pub fn cotangent_dims(&self) -> Vec<usize> {
        let mut out = vec![0];
        for d in 1..=self.dmax {
            let mut sq = Echelon::new(self.p);
            for a in 1..d {
                let pa = &self.pieces[a as usize];
                for &bi in &pa.basis {
                    let pb = &self.pieces[(d - a) as usize];
                    for (j, _) in pb.basis.iter().enumerate() {
                        let mut unit_b = vec![0; pb.basis.len()];
                        unit_b[j] = 1;
                        let prod = self.mul_mono(d - a, &unit_b, &pa.monos[bi]).unwrap();
                        sq.insert(&prod);
                    }
                }
            }
            out.push(self.hilbert(d) - sq.rank());
        }
        out
    }

    /// Whether the Hilbert function through `dmax` equals that of a
    /// polynomial ring on a minimal generating set of the maximal ideal.
    pub fn is_regular(&self) -> bool {
        let gens: Vec<u32> = self
            .cotangent_dims()
            .iter()
            .enumerate()
            .flat_map(|(d, &c)| std::iter::repeat_n(d as u32, c))
            .collect();
        // coefficients of Π 1/(1 - t^w) through dmax
        let mut series = vec![0usize; self.dmax as usize + 1];
        series[0] = 1;
        for w in gens {
            for d in w as usize..series.len() {
                series[d] += series[d - w as usize];
            }
        }
        (0..=self.dmax).all(|d| self.hilbert(d) == series[d as usize])
    }

    /// Graded Betti numbers `β_(n, j)` of `R/J` for `n ≤ nmax`, considering
    /// internal degrees `j ≤ dmax` only; `J` is given by homogeneous
    /// generators. `R/m` is `cyclic_betti(&vars, nmax)`.
    pub fn cyclic_betti(&self, j_gens: &[Poly], nmax: usize) -> Vec<BTreeMap<u32, usize>> {
        // kernel of R → R/J in each degree: the image of J
        let mut prev_degs = vec![0u32];
        let mut chosen: Vec<(u32, Vec<Vec<u64>>)> = Vec::new();
        for d in 1..=self.dmax {
            let piece = &self.pieces[d as usize];
            let mut span = Echelon::new(self.p);
            for (gd, g) in &chosen {
                self.multiples(&prev_degs, *gd, std::slice::from_ref(g), d, &mut span);
            }
            for h in j_gens {
                let Some(hd) = h.first().map(|t| degree(&self.weights, &t.0)) else {
                    continue;
                };
                if hd > d {
                    continue;
                }
                for u in monomials_of_degree(&self.weights, d - hd) {
                    let mut v = vec![0; piece.monos.len()];
                    for (m, c) in h {
                        let i = piece.index[&mono_mul(m, &u)];
                        v[i] = (v[i] + c % self.p) % self.p;
                    }
                    let x = self.coords(d, &v);
                    if span.insert(&x) {
                        chosen.push((d, vec![x]));
                    }
                }
            }
        }

        let mut out = vec![BTreeMap::from([(0, 1)])];
        let mut src_degs: Vec<u32> = chosen.iter().map(|g| g.0).collect();
        let mut images: Vec<Vec<Vec<u64>>> = chosen.into_iter().map(|g| g.1).collect();
        for n in 1..=nmax {
            let mut row = BTreeMap::new();
            for &d in &src_degs {
                *row.entry(d).or_insert(0) += 1;
            }
            out.push(row);
            if n == nmax {
                break;
            }
            let (degs, imgs) = self.kernel_generators(&prev_degs, &src_degs, &images);
            prev_degs = std::mem::replace(&mut src_degs, degs);
            images = imgs;
        }
        out
    }

    /// Span in degree `d` of `R · g` for elements `g` of the free module with
    /// generator degrees `degs`, each `g` of degree `gd` given blockwise.
    fn multiples(&self, degs: &[u32], gd: u32, gs: &[Vec<Vec<u64>>], d: u32, span: &mut Echelon) {
        if gd > d {
            return;
        }
        for u in monomials_of_degree(&self.weights, d - gd) {
            for g in gs {
                if let Some(v) = self.mul_element(degs, gd, g, &u) {
                    span.insert(&v);
                }
            }
        }
    }

    /// `u · g` flattened to coordinates of `F_(gd + deg u)`.
    fn mul_element(&self, degs: &[u32], gd: u32, g: &[Vec<u64>], u: &[u32]) -> Option<Vec<u64>> {
        let d = gd + degree(&self.weights, u);
        if d > self.dmax {
            return None;
        }
        let mut out = Vec::new();
        for (k, &bk) in degs.iter().enumerate() {
            if bk > d {
                continue;
            }
            if bk > gd {
                out.extend(std::iter::repeat_n(0, self.hilbert(d - bk)));
            } else {
                out.extend(self.mul_mono(gd - bk, &g[k], u)?);
            }
        }
        Some(out)
    }

    /// Splits flat coordinates of `F_d` into blocks.
    fn split(&self, degs: &[u32], d: u32, v: &[u64]) -> Vec<Vec<u64>> {
        let mut at = 0;
        degs.iter()
            .map(|&b| {
                if b > d {
                    return Vec::new();
                }
                let n = self.hilbert(d - b);
                at += n;
                v[at - n..at].to_vec()
            })
            .collect()
    }

    /// Minimal generators of the kernel of `F → G` (generator degrees
    /// `src_degs`, images in `G` with generator degrees `dst_degs`).
    fn kernel_generators(
        &self,
        dst_degs: &[u32],
        src_degs: &[u32],
        images: &[Vec<Vec<u64>>],
    ) -> (Vec<u32>, Vec<Vec<Vec<u64>>>) {
        let mut degs = Vec::new();
        let mut gens: Vec<Vec<Vec<u64>>> = Vec::new();
        for d in 0..=self.dmax {
            let mut cols = Vec::new();
            let mut nrows = 0;
            for &b in dst_degs {
                if b <= d {
                    nrows += self.hilbert(d - b);
                }
            }
            for (i, &a) in src_degs.iter().enumerate() {
                if a > d {
                    continue;
                }
                let piece = &self.pieces[(d - a) as usize];
                for &bi in &piece.basis {
                    let u = &piece.monos[bi];
                    cols.push(self.mul_element(dst_degs, a, &images[i], u).expect("degree within range"));
                }
            }
            let ker = kernel(self.p, nrows, &cols);
            let mut span = Echelon::new(self.p);
            for (g, &gd) in gens.iter().zip(&degs) {
                self.multiples(src_degs, gd, std::slice::from_ref(g), d, &mut span);
            }
            for v in ker {
                if span.insert(&v) {
                    gens.push(self.split(src_degs, d, &v));
                    degs.push(d);
                }
            }
        }
        (degs, gens)
    }
}

impl GradedRing {
    /// `dim_k H_n(K(f_1..f_q; R))` for `0 ≤ n ≤ q` when `R` has finite
    /// length; the complex is written out over a `k`-basis of all of `R`.
    pub fn koszul_homology(&self, elements: &[Poly]) -> Option<Vec<usize>> {
        let len = self.length()?;
        let mut offsets = Vec::new();
        let mut at = 0;
        for d in 0..=self.dmax {
            offsets.push(at);
            at += self.hilbert(d);
        }
        // multiplication by each f_i on the whole basis, column by column
        let mult: Vec<Vec<Vec<u64>>> = elements
            .iter()
            .map(|f| {
                let mut cols = Vec::new();
                for d in 0..=self.dmax {
                    for b in 0..self.hilbert(d) {
                        let mut unit = vec![0; self.hilbert(d)];
                        unit[b] = 1;
                        let mut col = vec![0; len];
                        for (m, c) in f {
                            if let Some(v) = self.mul_mono(d, &unit, m) {
                                let dd = d + degree(&self.weights, m);
                                for (i, x) in v.into_iter().enumerate() {
                                    let j = offsets[dd as usize] + i;
                                    col[j] = (col[j] + x * (c % self.p)) % self.p;
                                }
                            }
                        }
                        cols.push(col);
                    }
                }
                cols
            })
            .collect();
        let q = elements.len();
        let subsets: Vec<Vec<u32>> = (0..=q)
            .map(|n| (0u32..1 << q).filter(|s| s.count_ones() as usize == n).collect())
            .collect();
        let rank = |n: usize| -> usize {
            // d_n : K_n → K_(n-1)
            if n == 0 || n > q {
                return 0;
            }
            let target: HashMap<u32, usize> = subsets[n - 1].iter().enumerate().map(|(i, &s)| (s, i)).collect();
            let mut ech = Echelon::new(self.p);
            for &s in &subsets[n] {
                for b in 0..len {
                    let mut v = vec![0; len * subsets[n - 1].len()];
                    let mut sign_pos = 0;
                    for i in 0..q {
                        if s & (1 << i) == 0 {
                            continue;
                        }
                        let t = target[&(s & !(1 << i))];
                        let neg = sign_pos % 2 == 1;
                        sign_pos += 1;
                        for (r, &x) in mult[i][b].iter().enumerate() {
                            let x = if neg { (self.p - x) % self.p } else { x };
                            let j = t * len + r;
                            v[j] = (v[j] + x) % self.p;
                        }
                    }
                    ech.insert(&v);
                }
            }
            ech.rank()
        };
        let ranks: Vec<usize> = (0..=q + 1).map(rank).collect();
        Some(
            (0..=q)
                .map(|n| len * subsets[n].len() - ranks[n] - ranks[n + 1])
                .collect(),
        )
    }
}

/// Total Betti numbers from graded ones.
pub fn totals(graded: &[BTreeMap<u32, usize>]) -> Vec<usize> {
    graded.iter().map(|row| row.values().sum()).collect()
}

/// The variables as polynomials, i.e. generators of the maximal ideal.
pub fn variables(nvars: usize) -> Vec<Poly> {
    (0..nvars)
        .map(|i| {
            let mut e = vec![0; nvars];
            e[i] = 1;
            vec![(e, 1)]
        })
        .collect()
}
