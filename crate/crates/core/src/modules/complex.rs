use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, extend_basis, syzygies, GroebnerBasis, ModTerm, Vector};
use crate::polyring::{Polynomial, PrimeField};

use super::{FinModule, Matrix, QuotientRing};

/// A bounded complex whose term in degree `n` is `coker(rels_n)` on a free
/// frame of rank `ranks_n`, with differentials given on frames.
///
/// Differentials must carry relations into relations and compose to zero
/// modulo relations; [`ChainComplex::verify`] checks both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Arc<QuotientRing>,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is `d_{lo+k}: C_{lo+k} -> C_{lo+k-1}`; `diffs[0]` maps to zero.
    diffs: Vec<Matrix>,
    rels: Vec<Matrix>,
}

impl ChainComplex {
    /// Builds a complex from frame ranks in degrees `lo..lo+ranks.len()`,
    /// differentials `d_{lo+1}, ...` and per-degree relation matrices.
    pub fn new(
        ring: Arc<QuotientRing>,
        lo: i64,
        ranks: Vec<usize>,
        upper_diffs: Vec<Matrix>,
        rels: Vec<Matrix>,
    ) -> Result<Self> {
        if upper_diffs.len() + 1 != ranks.len().max(1) || rels.len() != ranks.len() {
            return Err(Error::ShapeMismatch("complex term counts disagree".into()));
        }
        for (k, d) in upper_diffs.iter().enumerate() {
            if d.nrows() != ranks[k] || d.ncols() != ranks[k + 1] {
                return Err(Error::ShapeMismatch(format!(
                    "differential in degree {} has shape {}x{}, expected {}x{}",
                    lo + k as i64 + 1,
                    d.nrows(),
                    d.ncols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        for (k, r) in rels.iter().enumerate() {
            if r.nrows() != ranks[k] {
                return Err(Error::ShapeMismatch("relation matrix row count".into()));
            }
        }
        let mut diffs = Vec::with_capacity(ranks.len());
        if let Some(&r0) = ranks.first() {
            diffs.push(Matrix::zero(0, r0));
        }
        diffs.extend(upper_diffs);
        let c = ChainComplex {
            ring,
            lo,
            ranks,
            diffs,
            rels,
        };
        if cfg!(debug_assertions) {
            c.verify()?;
        }
        Ok(c)
    }

    /// A complex of free modules.
    pub fn free(ring: Arc<QuotientRing>, lo: i64, ranks: Vec<usize>, upper_diffs: Vec<Matrix>) -> Result<Self> {
        let rels = ranks.iter().map(|&r| Matrix::empty(r)).collect();
        ChainComplex::new(ring, lo, ranks, upper_diffs, rels)
    }

    /// The module `M` concentrated in degree 0.
    pub fn from_module(m: &FinModule) -> Self {
        ChainComplex {
            ring: m.ring().clone(),
            lo: 0,
            ranks: vec![m.rank()],
            diffs: vec![Matrix::zero(0, m.rank())],
            rels: vec![m.relations().clone()],
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    fn index(&self, n: i64) -> Option<usize> {
        if n < self.lo || n > self.hi() {
            None
        } else {
            Some((n - self.lo) as usize)
        }
    }

    /// Frame rank in degree `n` (zero outside the bounds).
    pub fn rank(&self, n: i64) -> usize {
        self.index(n).map_or(0, |k| self.ranks[k])
    }

    /// `d_n: C_n -> C_{n-1}` on frames.
    pub fn differential(&self, n: i64) -> Matrix {
        match self.index(n) {
            Some(0) => Matrix::zero(self.rank(n - 1), self.ranks[0]),
            Some(k) => self.diffs[k].clone(),
            None => Matrix::zero(self.rank(n - 1), 0),
        }
    }

    fn differential_ref(&self, n: i64) -> Option<&Matrix> {
        match self.index(n) {
            Some(k) if k > 0 => Some(&self.diffs[k]),
            _ => None,
        }
    }

    /// Relations of the term in degree `n`.
    pub fn relations(&self, n: i64) -> Matrix {
        self.index(n)
            .map_or_else(|| Matrix::empty(0), |k| self.rels[k].clone())
    }

    fn relations_ref(&self, n: i64) -> Option<&Matrix> {
        self.index(n).map(|k| &self.rels[k])
    }

    pub fn is_free(&self) -> bool {
        self.rels.iter().all(|r| r.ncols() == 0)
    }

    /// The term in degree `n` as a module.
    pub fn term(&self, n: i64) -> FinModule {
        FinModule::new(self.ring.clone(), self.relations(n))
    }

    fn relation_basis(&self, n: i64) -> GroebnerBasis {
        let cols = self.relations_ref(n).map_or(&[][..], |r| r.cols());
        buchberger(self.ring.context(), self.rank(n), cols)
    }

    /// Checks that differentials respect relations and that `d ∘ d = 0`
    /// modulo relations.
    pub fn verify(&self) -> Result<()> {
        let ctx = self.ring.context();
        for n in self.lo + 1..=self.hi() {
            let d = self.differential_ref(n).unwrap();
            let target = self.relation_basis(n - 1);
            if let Some(r) = self.relations_ref(n) {
                for c in r.cols() {
                    if !target.contains(&d.apply(ctx, c)) {
                        return Err(Error::NotAComplex { degree: n });
                    }
                }
            }
            if n - 1 > self.lo {
                let below = self.relation_basis(n - 2);
                let dd = self.differential_ref(n - 1).unwrap().mul(ctx, d);
                if !dd.cols().iter().all(|c| below.contains(c)) {
                    return Err(Error::NotAComplex { degree: n });
                }
            }
        }
        Ok(())
    }

    /// Replaces every differential entry by `f(entry)` reduced modulo `I`.
    pub fn map_differentials(&self, mut f: impl FnMut(&Polynomial) -> Polynomial) -> ChainComplex {
        let ring = self.ring.clone();
        let diffs = self
            .diffs
            .iter()
            .map(|d| d.map_entries(|e| ring.reduce(&f(e))))
            .collect();
        ChainComplex {
            diffs,
            ..self.clone()
        }
    }

    /// `Σ^k C`: `(Σ^k C)_n = C_{n-k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i64) -> ChainComplex {
        let field = self.ring.field();
        let sign = if k.rem_euclid(2) == 1 { field.neg(1) } else { 1 };
        ChainComplex {
            lo: self.lo + k,
            diffs: self.diffs.iter().map(|d| d.scale(field, sign)).collect(),
            ..self.clone()
        }
    }

    /// Keeps degrees `lo..=hi` (the result is again a complex).
    pub fn truncate(&self, hi: i64) -> ChainComplex {
        let keep = (hi - self.lo + 1).clamp(0, self.ranks.len() as i64) as usize;
        ChainComplex {
            ring: self.ring.clone(),
            lo: self.lo,
            ranks: self.ranks[..keep].to_vec(),
            diffs: self.diffs[..keep].to_vec(),
            rels: self.rels[..keep].to_vec(),
        }
    }

    /// Generators of the cycles in degree `n` and a basis of the boundaries.
    fn cycles_and_boundaries(&self, n: i64) -> (Vec<Vector>, GroebnerBasis) {
        let ctx = self.ring.context();
        let r = self.rank(n);
        let nv = self.ring.nvars();
        let z: Vec<Vector> = match self.differential_ref(n) {
            Some(d) if self.rank(n - 1) > 0 => {
                let base = self.relation_basis(n - 1);
                syzygies(ctx, self.rank(n - 1), d.cols(), Some(&base))
            }
            _ => (0..r).map(|i| Vector::unit(nv, i)).collect(),
        };
        let mut b_gens: Vec<Vector> = self.relations_ref(n).map_or(Vec::new(), |m| m.cols().to_vec());
        if let Some(d) = self.differential_ref(n + 1) {
            b_gens.extend(d.cols().iter().filter(|c| !c.is_zero()).cloned());
        }
        let b = buchberger(ctx, r, &b_gens);
        (z, b)
    }

    /// `ℓ(H_n)`, or `None` when infinite.
    pub fn homology_length(&self, n: i64) -> Option<usize> {
        if self.rank(n) == 0 {
            return Some(0);
        }
        let (z, b) = self.cycles_and_boundaries(n);
        extend_basis(&b, &z).length_over(&b)
    }

    /// `ℓ(H_n)` for each `n` in `degrees`.
    pub fn homology_lengths(&self, degrees: impl IntoIterator<Item = i64>) -> Vec<Option<usize>> {
        degrees.into_iter().map(|n| self.homology_length(n)).collect()
    }

    /// `H_n` as a module: generators are cycles, relations their syzygies
    /// modulo boundaries; returned in minimal form.
    pub fn homology(&self, n: i64) -> FinModule {
        if self.rank(n) == 0 {
            return FinModule::free(self.ring.clone(), 0);
        }
        let (z, b) = self.cycles_and_boundaries(n);
        let z: Vec<Vector> = z.into_iter().filter(|v| !b.contains(v)).collect();
        let rel = syzygies(self.ring.context(), self.rank(n), &z, Some(&b));
        FinModule::new(self.ring.clone(), Matrix::new(z.len(), rel)).minimal_presentation()
    }
}

/// Lexicographically ordered `a`-subsets of `0..e`.
fn subsets(e: usize, a: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, e: usize, a: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == a {
            out.push(cur.clone());
            return;
        }
        for i in start..e {
            cur.push(i);
            rec(i + 1, e, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, e, a, &mut Vec::new(), &mut out);
    out
}

/// The Koszul complex `K(y; M)` in degrees `0..=|y|`, with basis `e_S ⊗ g`
/// for subsets `S` (lexicographic) and generators `g` of `M`, and
/// `d(e_S) = Σ_k (-1)^k y_{S_k} e_{S - S_k}`.
pub fn koszul_complex(elements: &[Polynomial], m: &FinModule) -> Result<ChainComplex> {
    let ring = m.ring().clone();
    let field = ring.field();
    let mut ys = Vec::with_capacity(elements.len());
    for y in elements {
        ring.poly().check(y)?;
        let y = ring.reduce(y);
        if !ring.in_maximal_ideal(&y) {
            return Err(Error::NotInMaximalIdeal(ring.poly().format(&y)));
        }
        ys.push(y);
    }
    let e = ys.len();
    let f = m.rank();
    let layers: Vec<Vec<Vec<usize>>> = (0..=e).map(|a| subsets(e, a)).collect();
    let mut diffs = Vec::new();
    for a in 1..=e {
        let lower = &layers[a - 1];
        let cols = layers[a]
            .iter()
            .map(|s| {
                let mut comps = vec![Polynomial::zero(); lower.len()];
                for k in 0..s.len() {
                    let mut rest = s.clone();
                    rest.remove(k);
                    let idx = lower.binary_search(&rest).unwrap();
                    let sign = if k % 2 == 0 { 1 } else { field.neg(1) };
                    comps[idx] = ring.poly().scale(&ys[s[k]], sign);
                }
                Vector::from_components(&comps)
            })
            .collect();
        diffs.push(Matrix::new(lower.len(), cols).kron_identity_right(f));
    }
    let ranks = layers.iter().map(|l| l.len() * f).collect();
    let rels = layers
        .iter()
        .map(|l| m.relations().kron_identity_left(l.len()))
        .collect();
    ChainComplex::new(ring, 0, ranks, diffs, rels)
}

/// Offsets of the blocks `(a, n - a)` inside degree `n` of a double complex.
struct Blocks {
    /// For each total degree: list of `(a, b, offset)`.
    layout: Vec<Vec<(i64, i64, usize)>>,
    ranks: Vec<usize>,
    lo: i64,
}

impl Blocks {
    fn offset(&self, n: i64, a: i64) -> Option<usize> {
        let k = n - self.lo;
        if k < 0 || k as usize >= self.layout.len() {
            return None;
        }
        self.layout[k as usize]
            .iter()
            .find(|t| t.0 == a)
            .map(|t| t.2)
    }
}

/// Lays out total degrees `lo..=hi`; `size(n, a)` is the frame rank of the
/// block with first index `a`, or `None` when the block is absent.
fn layout(lo: i64, hi: i64, a_range: (i64, i64), size: impl Fn(i64, i64) -> Option<usize>) -> Blocks {
    let mut layout = Vec::new();
    let mut ranks = Vec::new();
    for n in lo..=hi {
        let mut blocks = Vec::new();
        let mut off = 0;
        for a in a_range.0..=a_range.1 {
            if let Some(s) = size(n, a) {
                blocks.push((a, n - a, off));
                off += s;
            }
        }
        layout.push(blocks);
        ranks.push(off);
    }
    Blocks { layout, ranks, lo }
}

fn push_shifted(terms: &mut Vec<ModTerm>, v: &Vector, f: impl Fn(u32) -> u32, coef: u32, field: PrimeField) {
    for t in v.terms() {
        terms.push(ModTerm {
            pos: f(t.pos),
            mono: t.mono,
            coef: field.mul(t.coef, coef),
        });
    }
}

/// Total complex of `C ⊗_R D` with `d(a ⊗ b) = da ⊗ b + (-1)^{|a|} a ⊗ db`;
/// the frame of block `(a, b)` is `(i, u) ↦ i * rank(D_b) + u`, blocks ordered
/// by increasing `a`.
pub fn tensor_complexes(c: &ChainComplex, d: &ChainComplex) -> Result<ChainComplex> {
    if c.ring != d.ring {
        return Err(Error::RingMismatch);
    }
    let ring = c.ring.clone();
    let field = ring.field();
    let ctx = ring.context();
    let lo = c.lo + d.lo;
    let hi = c.hi() + d.hi();
    let blocks = layout(lo, hi, (c.lo, c.hi()), |n, a| {
        let b = n - a;
        (d.lo..=d.hi()).contains(&b).then(|| c.rank(a) * d.rank(b))
    });
    let mut diffs = Vec::new();
    let mut rels = Vec::new();
    for (k, layer) in blocks.layout.iter().enumerate() {
        let n = lo + k as i64;
        let rank = blocks.ranks[k];
        let mut rel_cols = Vec::new();
        let mut d_cols = Vec::new();
        for &(a, b, off) in layer {
            let (ra, rb) = (c.rank(a), d.rank(b));
            let ca = c.relations(a).kron_identity_right(rb);
            let db = d.relations(b).kron_identity_left(ra);
            for col in ca.cols().iter().chain(db.cols()) {
                rel_cols.push(col.shift_positions(off));
            }
            if n == lo {
                continue;
            }
            let dc = c.differential_ref(a);
            let dd = d.differential_ref(b);
            let off_c = blocks.offset(n - 1, a - 1);
            let off_d = blocks.offset(n - 1, a);
            let rb1 = d.rank(b - 1);
            let sign = if a.rem_euclid(2) == 1 { field.neg(1) } else { 1 };
            for i in 0..ra {
                for u in 0..rb {
                    let mut terms = Vec::new();
                    if let (Some(dc), Some(o)) = (dc, off_c) {
                        push_shifted(&mut terms, dc.col(i), |p| o as u32 + p * rb as u32 + u as u32, 1, field);
                    }
                    if let (Some(dd), Some(o)) = (dd, off_d) {
                        push_shifted(&mut terms, dd.col(u), |p| o as u32 + (i * rb1) as u32 + p, sign, field);
                    }
                    d_cols.push(ctx.reduce_vector(&Vector::from_terms(field, terms)));
                }
            }
        }
        rels.push(Matrix::new(rank, rel_cols));
        if n > lo {
            diffs.push(Matrix::new(blocks.ranks[k - 1], d_cols));
        }
    }
    ChainComplex::new(ring, lo, blocks.ranks, diffs, rels)
}

/// `Hom_R(F, K)` for a complex `F` of free modules: degree `n` collects
/// `Hom(F_a, K_j)` with `j - a = n`, framed as `(i, u) ↦ i * rank(K_j) + u`,
/// and `∂f = d^K ∘ f - (-1)^n f ∘ d^F`.
pub fn hom_complex(f: &ChainComplex, k: &ChainComplex) -> Result<ChainComplex> {
    if f.ring != k.ring {
        return Err(Error::RingMismatch);
    }
    if !f.is_free() {
        return Err(Error::ShapeMismatch("Hom source must be a complex of free modules".into()));
    }
    let ring = f.ring.clone();
    let field = ring.field();
    let ctx = ring.context();
    let lo = k.lo - f.hi();
    let hi = k.hi() - f.lo;
    let blocks = layout(lo, hi, (f.lo, f.hi()), |n, a| {
        let j = n + a;
        (k.lo..=k.hi()).contains(&j).then(|| f.rank(a) * k.rank(j))
    });
    let transposed: Vec<Option<Matrix>> = (f.lo..=f.hi() + 1)
        .map(|a| f.differential_ref(a).map(|d| d.transpose(field)))
        .collect();
    let mut diffs = Vec::new();
    let mut rels = Vec::new();
    for (idx, layer) in blocks.layout.iter().enumerate() {
        let n = lo + idx as i64;
        let mut rel_cols = Vec::new();
        let mut d_cols = Vec::new();
        for &(a, _, off) in layer {
            let j = n + a;
            let (fa, kj) = (f.rank(a), k.rank(j));
            for col in k.relations(j).kron_identity_left(fa).cols() {
                rel_cols.push(col.shift_positions(off));
            }
            if n == lo {
                continue;
            }
            let dk = k.differential_ref(j);
            let off_k = blocks.offset(n - 1, a);
            let kj1 = k.rank(j - 1);
            // f ∘ d^F lands in Hom(F_{a+1}, K_j), also of degree n - 1
            let dft = transposed
                .get((a + 1 - f.lo) as usize)
                .and_then(|t| t.as_ref());
            let off_f = blocks.offset(n - 1, a + 1);
            let sign = if n.rem_euclid(2) == 0 { field.neg(1) } else { 1 };
            for i in 0..fa {
                for u in 0..kj {
                    let mut terms = Vec::new();
                    if let (Some(dk), Some(o)) = (dk, off_k) {
                        push_shifted(&mut terms, dk.col(u), |p| o as u32 + (i * kj1) as u32 + p, 1, field);
                    }
                    if let (Some(t), Some(o)) = (dft, off_f) {
                        push_shifted(&mut terms, t.col(i), |l| o as u32 + l * kj as u32 + u as u32, sign, field);
                    }
                    d_cols.push(ctx.reduce_vector(&Vector::from_terms(field, terms)));
                }
            }
        }
        rels.push(Matrix::new(blocks.ranks[idx], rel_cols));
        if n > lo {
            diffs.push(Matrix::new(blocks.ranks[idx - 1], d_cols));
        }
    }
    ChainComplex::new(ring, lo, blocks.ranks, diffs, rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modules::tensor_modules;
    use crate::polyring::{Monomial, PolyRing};
    use proptest::prelude::*;

    fn quotient(p: u64, vars: &[&str], ideal: &[&str]) -> Arc<QuotientRing> {
        let poly = PolyRing::new(p, vars.iter().map(|s| s.to_string()).collect()).unwrap();
        let gens = ideal.iter().map(|s| poly.parse(s).unwrap()).collect();
        Arc::new(QuotientRing::new(poly, gens).unwrap())
    }

    fn lengths(c: &ChainComplex) -> Vec<Option<usize>> {
        c.homology_lengths(c.lo()..=c.hi())
    }

    #[test]
    fn koszul_shapes() {
        let r = quotient(2, &["x"], &["x^2"]);
        let free = FinModule::free(r.clone(), 1);
        let k = koszul_complex(&r.poly().vars(), &free).unwrap();
        assert_eq!((k.lo(), k.hi(), k.rank(0), k.rank(1)), (0, 1, 1, 1));
        assert_eq!(r.poly().format(&k.differential(1).entry(0, 0)), "x");
        let k0 = koszul_complex(&[], &free).unwrap();
        assert_eq!((k0.lo(), k0.hi(), k0.rank(0)), (0, 0, 1));
        assert!(matches!(
            koszul_complex(&[r.poly().one()], &free),
            Err(Error::NotInMaximalIdeal(_))
        ));
    }

    #[test]
    fn koszul_homology() {
        let r2 = quotient(2, &["x"], &["x^2"]);
        let k = koszul_complex(&r2.poly().vars(), &FinModule::free(r2.clone(), 1)).unwrap();
        assert_eq!(lengths(&k), [Some(1), Some(1)]);
        assert_eq!(k.homology(0).rank(), 1);
        assert_eq!(k.homology(1).length(), Some(1));

        let s = quotient(2, &["x"], &[]);
        let k = koszul_complex(&s.poly().vars(), &FinModule::free(s.clone(), 1)).unwrap();
        assert_eq!(lengths(&k), [Some(1), Some(0)]);

        let s2 = quotient(2, &["x", "y"], &[]);
        let k = koszul_complex(&s2.poly().vars(), &FinModule::free(s2.clone(), 1)).unwrap();
        assert_eq!((k.rank(0), k.rank(1), k.rank(2)), (1, 2, 1));
        assert_eq!(lengths(&k), [Some(1), Some(0), Some(0)]);
        assert_eq!(k.homology(0).length(), Some(1));
        assert!(k.homology(1).is_zero());
    }

    #[test]
    fn exact_identity_complex() {
        let r = quotient(3, &["x", "y"], &[]);
        let c = ChainComplex::free(r.clone(), 0, vec![1, 1, 1], vec![Matrix::identity(2, 1), Matrix::zero(1, 1)]).unwrap();
        assert_eq!(c.homology_length(1), Some(0));
        assert_eq!(c.homology_length(0), Some(0));
    }

    #[test]
    fn non_complex_is_rejected() {
        let r = quotient(2, &["x"], &[]);
        let x = Vector::from_components(&[r.poly().var(0)]);
        let d = Matrix::new(1, vec![x]);
        let res = ChainComplex::free(r.clone(), 0, vec![1, 1, 1], vec![d.clone(), d]);
        assert!(matches!(res, Err(Error::NotAComplex { degree: 2 })));
    }

    #[test]
    fn tensor_of_koszul_complexes() {
        let r = quotient(2, &["x", "y"], &[]);
        let free = FinModule::free(r.clone(), 1);
        let kx = koszul_complex(&[r.poly().var(0)], &free).unwrap();
        let ky = koszul_complex(&[r.poly().var(1)], &free).unwrap();
        let kxy = koszul_complex(&r.poly().vars(), &free).unwrap();
        let t = tensor_complexes(&kx, &ky).unwrap();
        assert_eq!((t.rank(0), t.rank(1), t.rank(2)), (1, 2, 1));
        assert_eq!(lengths(&t), lengths(&kxy));

        let unit = ChainComplex::from_module(&free);
        let t = tensor_complexes(&kxy, &unit).unwrap();
        assert_eq!(t, kxy);
    }

    #[test]
    fn shift_commutes_with_tensor() {
        let r = quotient(2, &["x", "y"], &["x*y"]);
        let free = FinModule::free(r.clone(), 1);
        let c = koszul_complex(&r.poly().vars(), &free).unwrap();
        let d = koszul_complex(&[r.poly().var(0)], &FinModule::residue_field(r.clone())).unwrap();
        let a = tensor_complexes(&c.shift(1), &d).unwrap();
        let b = tensor_complexes(&c, &d).unwrap().shift(1);
        assert_eq!(a, b);
        a.verify().unwrap();
    }

    #[test]
    fn hom_complex_computes_ext() {
        // Ext^i(k, R) over R2 = F_2[x]/(x^2) from the periodic resolution
        let r = quotient(2, &["x"], &["x^2"]);
        let x = Vector::from_components(&[r.poly().var(0)]);
        let d = Matrix::new(1, vec![x]);
        let f = ChainComplex::free(r.clone(), 0, vec![1; 5], vec![d; 4]).unwrap();
        let h = hom_complex(&f, &ChainComplex::from_module(&FinModule::free(r.clone(), 1))).unwrap();
        assert_eq!((h.lo(), h.hi()), (-4, 0));
        // Hom(k, R) = soc R = k, and the higher Ext vanish (R is Gorenstein)
        assert_eq!(h.homology_length(0), Some(1));
        assert_eq!(h.homology_length(-1), Some(0));
        assert_eq!(h.homology_length(-2), Some(0));
    }

    fn arb_entries(nvars: usize) -> impl Strategy<Value = Vec<Vec<(Vec<u32>, u32)>>> {
        prop::collection::vec(
            prop::collection::vec((prop::collection::vec(0u32..2, nvars), 0u32..2), 0..3),
            4,
        )
    }

    fn poly_of(t: &[(Vec<u32>, u32)], field: crate::polyring::PrimeField) -> Polynomial {
        Polynomial::from_terms(field, t.iter().map(|(e, c)| (Monomial::from_exponents(e), *c)).collect())
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn differentials_compose_to_zero(
            ri in 0usize..3,
            ys in prop::collection::vec(arb_entries(2), 1..2),
            rels in arb_entries(2),
        ) {
            let r = [
                quotient(2, &["x", "y"], &["x*y"]),
                quotient(3, &["x", "y"], &["x^2", "y^2"]),
                quotient(2, &["x", "y"], &[]),
            ][ri].clone();
            let field = r.field();
            // elements of m: drop constant terms
            let elems: Vec<Polynomial> = ys[0]
                .iter()
                .map(|t| {
                    let f = poly_of(t, field);
                    r.poly().sub(&f, &Polynomial::constant(2, f.constant_term()))
                })
                .collect();
            let rows = vec![vec![poly_of(&rels[0], field), poly_of(&rels[1], field)]];
            let m = FinModule::from_rows(r.clone(), &rows).unwrap();
            let k = koszul_complex(&elems[..3], &m).unwrap();
            prop_assert!(k.verify().is_ok());
            let t = tensor_complexes(&k, &koszul_complex(&elems[3..], &m).unwrap()).unwrap();
            prop_assert!(t.verify().is_ok());
        }

        #[test]
        fn tensor_is_symmetric_on_minimal_frames(
            ri in 0usize..2,
            a in arb_entries(2),
            b in arb_entries(2),
        ) {
            let r = [
                quotient(2, &["x", "y"], &["x*y"]),
                quotient(2, &["x", "y"], &["x^2", "x*y", "y^2"]),
            ][ri].clone();
            let field = r.field();
            let ma = FinModule::from_rows(r.clone(), &[
                vec![poly_of(&a[0], field), poly_of(&a[1], field)],
                vec![poly_of(&a[2], field), poly_of(&a[3], field)],
            ]).unwrap();
            let mb = FinModule::from_rows(r.clone(), &[
                vec![poly_of(&b[0], field), poly_of(&b[1], field), poly_of(&b[2], field)],
            ]).unwrap();
            let ab = tensor_modules(&ma, &mb).unwrap().minimal_presentation();
            let ba = tensor_modules(&mb, &ma).unwrap().minimal_presentation();
            prop_assert_eq!(ab.rank(), ba.rank());
            prop_assert_eq!(ab.relations().ncols(), ba.relations().ncols());
            prop_assert_eq!(ab.length(), ba.length());
        }
    }
}
