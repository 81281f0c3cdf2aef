//! Tensor-term backend: N-site operators as sums of site-factored terms.
//!
//! An operator on an N-spin chain is stored as Σ_t c_t · f_{t,1}⊗…⊗f_{t,N}
//! with each factor a 2×2 [`SiteMatrix`]. Identity factors are stored
//! explicitly so every term has exactly N factors.
//!
//! Two rules keep N = 100+ chains cheap:
//!
//! * inner products never densify: tr over the full space factorizes into a
//!   product of per-site traces, tr(A†B) = Σ_st c̄_s c_t ∏_i tr(f_{s,i}† f_{t,i});
//! * products and commutators accumulate terms into a canonical form keyed by
//!   normalized factor lists, so proportional terms merge instead of piling up.

use std::collections::HashMap;

use num_complex::Complex64 as C64;

use super::dense::DenseOperator;
use super::site::{SiteMatrix, C_ONE, C_ZERO};
use super::OpError;

/// Coefficients below this magnitude are dropped during compression.
pub const MIN_TERM_COEFF: f64 = 1e-15;

/// Default densification cap: refuse `to_dense` beyond this dimension.
pub const DEFAULT_DENSE_CAP: usize = 1 << 14;

/// Entrywise tolerance for recognizing proportional site factors.
const FACTOR_MATCH_TOL: f64 = 1e-12;

/// One term: a scalar coefficient times an ordered list of per-site factors.
#[derive(Debug, Clone)]
pub struct TensorTerm {
    pub coeff: C64,
    pub factors: Vec<SiteMatrix>,
}

impl TensorTerm {
    pub fn new(coeff: C64, factors: Vec<SiteMatrix>) -> Self {
        Self { coeff, factors }
    }

    /// Term with `matrix` at `site` and identities elsewhere.
    pub fn single_site(n_sites: usize, site: usize, coeff: C64, matrix: SiteMatrix) -> Self {
        let mut factors = vec![SiteMatrix::identity(); n_sites];
        factors[site] = matrix;
        Self { coeff, factors }
    }

    /// Trace over the full 2^N space: coeff · ∏_i tr(f_i).
    pub fn trace(&self) -> C64 {
        let mut acc = self.coeff;
        for f in &self.factors {
            acc *= f.trace();
            if acc == C_ZERO {
                break;
            }
        }
        acc
    }
}

/// A formal sum of tensor terms on a fixed number of sites.
#[derive(Debug, Clone)]
pub struct TensorOperator {
    n_sites: usize,
    terms: Vec<TensorTerm>,
}

impl TensorOperator {
    pub fn new(n_sites: usize, terms: Vec<TensorTerm>) -> Result<Self, OpError> {
        for t in &terms {
            if t.factors.len() != n_sites {
                return Err(OpError::FactorCountMismatch {
                    got: t.factors.len(),
                    want: n_sites,
                });
            }
        }
        Ok(Self { n_sites, terms })
    }

    pub fn zero(n_sites: usize) -> Self {
        Self {
            n_sites,
            terms: Vec::new(),
        }
    }

    pub fn identity(n_sites: usize) -> Self {
        Self {
            n_sites,
            terms: vec![TensorTerm::new(
                C_ONE,
                vec![SiteMatrix::identity(); n_sites],
            )],
        }
    }

    /// I⊗…⊗m⊗…⊗I with `m` at `site`.
    pub fn single_site(n_sites: usize, site: usize, m: SiteMatrix) -> Self {
        Self {
            n_sites,
            terms: vec![TensorTerm::single_site(n_sites, site, C_ONE, m)],
        }
    }

    /// Term with `mi` at `site_i` and `mj` at `site_j` (distinct sites).
    pub fn two_site(
        n_sites: usize,
        site_i: usize,
        site_j: usize,
        mi: SiteMatrix,
        mj: SiteMatrix,
    ) -> Self {
        assert_ne!(site_i, site_j, "two_site needs distinct sites");
        let mut factors = vec![SiteMatrix::identity(); n_sites];
        factors[site_i] = mi;
        factors[site_j] = mj;
        Self {
            n_sites,
            terms: vec![TensorTerm::new(C_ONE, factors)],
        }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn terms(&self) -> &[TensorTerm] {
        &self.terms
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Hilbert-space dimension 2^N as a float (exact: powers of two).
    pub fn hilbert_dim(&self) -> f64 {
        (self.n_sites as f64).exp2()
    }

    fn check_sites(&self, other: &Self) -> Result<(), OpError> {
        if self.n_sites != other.n_sites {
            return Err(OpError::SiteCountMismatch(self.n_sites, other.n_sites));
        }
        Ok(())
    }

    /// Structural sum: concatenates term lists (no compression).
    pub fn add(&self, other: &Self) -> Result<Self, OpError> {
        self.check_sites(other)?;
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Ok(Self {
            n_sites: self.n_sites,
            terms,
        })
    }

    pub fn scale(&self, c: C64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| TensorTerm::new(t.coeff * c, t.factors.clone()))
            .collect();
        Self {
            n_sites: self.n_sites,
            terms,
        }
    }

    /// Product `self · other`, accumulated in canonical compressed form.
    pub fn multiply(&self, other: &Self) -> Result<Self, OpError> {
        self.check_sites(other)?;
        let mut acc = TermAccumulator::new(self.n_sites);
        for s in &self.terms {
            for t in &other.terms {
                acc.push_product(s.coeff * t.coeff, &s.factors, &t.factors);
            }
        }
        Ok(acc.finish())
    }

    /// Commutator [self, other] = self·other − other·self, accumulated in
    /// canonical form; never more than 2·|self|·|other| terms.
    pub fn commutator(&self, other: &Self) -> Result<Self, OpError> {
        self.check_sites(other)?;
        let mut acc = TermAccumulator::new(self.n_sites);
        let minus = C64::new(-1.0, 0.0);
        for s in &self.terms {
            for t in &other.terms {
                let c = s.coeff * t.coeff;
                acc.push_product(c, &s.factors, &t.factors);
                acc.push_product(minus * c, &t.factors, &s.factors);
            }
        }
        Ok(acc.finish())
    }

    /// Adjoint: conjugate coefficients, adjoint factors ((A⊗B)† = A†⊗B†).
    pub fn adjoint(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                TensorTerm::new(
                    t.coeff.conj(),
                    t.factors.iter().map(|f| f.adjoint()).collect(),
                )
            })
            .collect();
        Self {
            n_sites: self.n_sites,
            terms,
        }
    }

    pub fn trace(&self) -> C64 {
        self.terms.iter().map(|t| t.trace()).sum()
    }

    /// Traceless part: appends −(tr/2^N)·I⊗…⊗I.
    pub fn traceless(&self) -> Self {
        let shift = self.trace() / C64::new(self.hilbert_dim(), 0.0);
        if shift == C_ZERO {
            return self.clone();
        }
        let mut out = self.clone();
        out.terms.push(TensorTerm::new(
            -shift,
            vec![SiteMatrix::identity(); self.n_sites],
        ));
        out
    }

    /// `self + λ·I` for real λ.
    pub fn shifted(&self, lambda: f64) -> Self {
        let mut out = self.clone();
        out.terms.push(TensorTerm::new(
            C64::new(lambda, 0.0),
            vec![SiteMatrix::identity(); self.n_sites],
        ));
        out
    }

    /// Frobenius inner product tr(self† · other) via per-site trace products.
    /// Never materializes the 2^N-dimensional matrices.
    ///
    /// Sites where both factors are the stored identity contribute tr(I) = 2
    /// each and are handled as a single power of two, so a term pair costs
    /// O(size of the combined non-identity support), not O(N).
    pub fn frobenius_inner(&self, other: &Self) -> Result<C64, OpError> {
        self.check_sites(other)?;
        let sup_s: Vec<Vec<u32>> = self.terms.iter().map(term_support).collect();
        let sup_t: Vec<Vec<u32>> = other.terms.iter().map(term_support).collect();
        let n = self.n_sites as u32;
        let mut acc = C_ZERO;
        for (s, ss) in self.terms.iter().zip(&sup_s) {
            for (t, ts) in other.terms.iter().zip(&sup_t) {
                let mut prod = s.coeff.conj() * t.coeff;
                if prod == C_ZERO {
                    continue;
                }
                let mut i = 0;
                let mut j = 0;
                let mut union_size = 0u32;
                while i < ss.len() || j < ts.len() {
                    let site = match (ss.get(i), ts.get(j)) {
                        (Some(&a), Some(&b)) if a == b => {
                            i += 1;
                            j += 1;
                            a
                        }
                        (Some(&a), Some(&b)) if a < b => {
                            i += 1;
                            a
                        }
                        (Some(_), Some(&b)) => {
                            j += 1;
                            b
                        }
                        (Some(&a), None) => {
                            i += 1;
                            a
                        }
                        (None, Some(&b)) => {
                            j += 1;
                            b
                        }
                        (None, None) => unreachable!(),
                    };
                    union_size += 1;
                    prod *= s.factors[site as usize].conj_inner(&t.factors[site as usize]);
                    if prod == C_ZERO {
                        break;
                    }
                }
                if prod == C_ZERO {
                    continue;
                }
                acc += prod * C64::new(((n - union_size) as f64).exp2(), 0.0);
            }
        }
        Ok(acc)
    }

    /// ‖A‖² = tr(A†A); real and non-negative up to roundoff.
    pub fn norm_sq(&self) -> f64 {
        self.frobenius_inner(self)
            .expect("same operator")
            .re
            .max(0.0)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// Merge proportional terms and drop negligible coefficients.
    pub fn compress(&self) -> Self {
        let mut acc = TermAccumulator::new(self.n_sites);
        for t in &self.terms {
            acc.push(t.coeff, &t.factors);
        }
        acc.finish()
    }

    /// Densify with the default cap of 2^14.
    pub fn to_dense(&self) -> Result<DenseOperator, OpError> {
        self.to_dense_capped(DEFAULT_DENSE_CAP)
    }

    /// Σ_t coeff·(f_1⊗…⊗f_N) as an explicit matrix.
    pub fn to_dense_capped(&self, cap: usize) -> Result<DenseOperator, OpError> {
        let dim = 1usize
            .checked_shl(self.n_sites as u32)
            .filter(|&d| d <= cap)
            .ok_or(OpError::DenseCapExceeded {
                n_sites: self.n_sites,
                cap,
            })?;
        let mut out = DenseOperator::zeros(dim);
        for t in &self.terms {
            let mut factor_mat = DenseOperator::from_fn(1, |_, _| t.coeff);
            for f in &t.factors {
                let site = DenseOperator::from_fn(2, |i, j| f.entry(i, j));
                factor_mat = factor_mat.kron(&site);
            }
            out = out.add(&factor_mat).expect("dims agree");
        }
        Ok(out)
    }

    /// Frobenius norm of A − A†; zero iff Hermitian.
    pub fn hermiticity_deviation(&self) -> f64 {
        let diff = self
            .add(&self.adjoint().scale(C64::new(-1.0, 0.0)))
            .expect("same sites");
        diff.frobenius_norm()
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }
}

/// Sites whose factor is not the stored identity, ascending.
fn term_support(t: &TensorTerm) -> Vec<u32> {
    t.factors
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_exact_identity())
        .map(|(i, _)| i as u32)
        .collect()
}

/// Accumulates terms keyed by normalized factor lists.
///
/// Each factor is scaled so that its largest-modulus entry becomes 1 (the
/// scale folds into the coefficient), then interned against a registry of
/// distinct normalized matrices. Terms whose factor lists intern to the same
/// id sequence are proportional and merge.
struct TermAccumulator {
    n_sites: usize,
    registry: Vec<SiteMatrix>,
    map: HashMap<Vec<u32>, C64>,
    key_buf: Vec<u32>,
}

impl TermAccumulator {
    fn new(n_sites: usize) -> Self {
        Self {
            n_sites,
            registry: vec![SiteMatrix::identity()],
            map: HashMap::new(),
            key_buf: Vec::with_capacity(n_sites),
        }
    }

    /// Intern a factor; returns (registry id, absorbed multiplier), or `None`
    /// for an (exactly or numerically) zero factor.
    fn intern(&mut self, m: &SiteMatrix) -> Option<(u32, C64)> {
        if m.is_exact_identity() {
            return Some((0, C_ONE));
        }
        let max_abs = m.max_abs();
        if max_abs == 0.0 {
            return None;
        }
        // Deterministic pivot: first entry within a relative whisker of the
        // maximum modulus. Proportional matrices pick the same pivot.
        let threshold = max_abs * (1.0 - 1e-9);
        let mut pivot = C_ZERO;
        'outer: for i in 0..2 {
            for j in 0..2 {
                let e = m.entry(i, j);
                if e.norm() >= threshold {
                    pivot = e;
                    break 'outer;
                }
            }
        }
        let normalized = m.scale(C_ONE / pivot);
        for (id, r) in self.registry.iter().enumerate() {
            if normalized.approx_eq(r, FACTOR_MATCH_TOL) {
                return Some((id as u32, pivot));
            }
        }
        self.registry.push(normalized);
        Some(((self.registry.len() - 1) as u32, pivot))
    }

    fn push(&mut self, coeff: C64, factors: &[SiteMatrix]) {
        let mut total = coeff;
        self.key_buf.clear();
        for f in factors {
            match self.intern(f) {
                Some((id, mult)) => {
                    total *= mult;
                    self.key_buf.push(id);
                }
                None => return, // a zero factor annihilates the term
            }
        }
        let key = std::mem::take(&mut self.key_buf);
        match self.map.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += total;
                // Reuse the rejected buffer.
                self.key_buf = Vec::with_capacity(self.n_sites);
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(total);
                self.key_buf = Vec::with_capacity(self.n_sites);
            }
        }
    }

    /// Push the sitewise product a_i·b_i without materializing it first.
    fn push_product(&mut self, coeff: C64, a: &[SiteMatrix], b: &[SiteMatrix]) {
        let mut total = coeff;
        self.key_buf.clear();
        for (fa, fb) in a.iter().zip(b.iter()) {
            // Identity factors are the common case on long chains.
            if fa.is_exact_identity() && fb.is_exact_identity() {
                self.key_buf.push(0);
                continue;
            }
            let prod = if fa.is_exact_identity() {
                *fb
            } else if fb.is_exact_identity() {
                *fa
            } else {
                fa.mul(fb)
            };
            match self.intern(&prod) {
                Some((id, mult)) => {
                    total *= mult;
                    self.key_buf.push(id);
                }
                None => return,
            }
        }
        let key = std::mem::take(&mut self.key_buf);
        match self.map.entry(key) {
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += total;
                self.key_buf = Vec::with_capacity(self.n_sites);
            }
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(total);
                self.key_buf = Vec::with_capacity(self.n_sites);
            }
        }
    }

    fn finish(self) -> TensorOperator {
        let registry = self.registry;
        let mut keys: Vec<(Vec<u32>, C64)> = self
            .map
            .into_iter()
            .filter(|(_, c)| c.norm() >= MIN_TERM_COEFF)
            .collect();
        // Deterministic term order regardless of hash-map iteration.
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        let terms = keys
            .into_iter()
            .map(|(key, coeff)| {
                TensorTerm::new(
                    coeff,
                    key.iter().map(|&id| registry[id as usize]).collect(),
                )
            })
            .collect();
        TensorOperator {
            n_sites: self.n_sites,
            terms,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::site::PauliConvention;
    use super::*;

    fn sz() -> SiteMatrix {
        SiteMatrix::sigma_z(PauliConvention::Half)
    }

    #[test]
    fn identity_to_dense() {
        let op = TensorOperator::identity(2);
        let d = op.to_dense().unwrap();
        assert!(d.max_abs_diff(&DenseOperator::identity(4)).unwrap() == 0.0);
    }

    #[test]
    fn compress_merges_equal_factor_lists() {
        let n = 2;
        let t1 = TensorTerm::single_site(n, 0, C_ONE, sz());
        let t2 = TensorTerm::single_site(n, 0, C64::new(2.0, 0.0), sz());
        let op = TensorOperator::new(n, vec![t1, t2]).unwrap();
        let c = op.compress();
        assert_eq!(c.term_count(), 1);
        let dense = c.to_dense().unwrap();
        let want = TensorOperator::single_site(n, 0, sz())
            .scale(C64::new(3.0, 0.0))
            .to_dense()
            .unwrap();
        assert!(dense.max_abs_diff(&want).unwrap() < 1e-15);
    }

    #[test]
    fn compress_merges_proportional_factor_lists() {
        // (2σ_z)⊗I and σ_z⊗(2I) are proportional term-wise.
        let n = 2;
        let a = TensorTerm::new(
            C_ONE,
            vec![sz().scale(C64::new(2.0, 0.0)), SiteMatrix::identity()],
        );
        let b = TensorTerm::new(
            C_ONE,
            vec![sz(), SiteMatrix::identity().scale(C64::new(2.0, 0.0))],
        );
        let op = TensorOperator::new(n, vec![a, b]).unwrap();
        let c = op.compress();
        assert_eq!(c.term_count(), 1);
        let want = TensorOperator::single_site(n, 0, sz())
            .scale(C64::new(4.0, 0.0))
            .to_dense()
            .unwrap();
        assert!(c.to_dense().unwrap().max_abs_diff(&want).unwrap() < 1e-14);
    }

    #[test]
    fn compress_drops_zero_terms() {
        let n = 3;
        let zero_coeff = TensorTerm::single_site(n, 1, C_ZERO, sz());
        let zero_factor = TensorTerm::new(C_ONE, vec![SiteMatrix::zero(); n]);
        let op = TensorOperator::new(n, vec![zero_coeff, zero_factor]).unwrap();
        assert_eq!(op.compress().term_count(), 0);
    }

    #[test]
    fn frobenius_inner_factorizes() {
        // N=3, A = B = σ_z⊗I⊗I: tr(A†B) = (1/2)·2·2 = 2.
        let a = TensorOperator::single_site(3, 0, sz());
        let v = a.frobenius_inner(&a).unwrap();
        assert!((v - C64::new(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn dense_cap_enforced() {
        let op = TensorOperator::identity(20);
        assert!(matches!(
            op.to_dense_capped(1 << 10),
            Err(OpError::DenseCapExceeded { .. })
        ));
    }

    #[test]
    fn traceless_kills_trace() {
        let op = TensorOperator::identity(4)
            .scale(C64::new(2.5, 0.0))
            .add(&TensorOperator::single_site(4, 2, sz()))
            .unwrap();
        let t = op.traceless();
        assert!(t.trace().norm() < 1e-12 * t.hilbert_dim());
    }

    #[test]
    fn site_count_mismatch_reported() {
        let a = TensorOperator::identity(2);
        let b = TensorOperator::identity(3);
        assert!(matches!(
            a.add(&b),
            Err(OpError::SiteCountMismatch(2, 3))
        ));
    }
}
