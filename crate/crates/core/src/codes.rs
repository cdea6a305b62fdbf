//! Rank-metric codes as F_q-subspaces of linearized polynomials.
//!
//! Structured families carry a closed-form membership predicate. Every code
//! also lazily builds its F_p span and a parity matrix, which drive the
//! generic membership test, the nucleus solver and the equivalence search.

use std::sync::{Arc, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Fe, FieldTower};
use crate::linalg::{small_rank, PrimeField, Span};
use crate::linpoly::{coords_raw, fp_matrix_raw, gcd, same_tower, LinearizedPoly};

/// Default cap on the number of codewords enumerated exactly.
pub const DEFAULT_BUDGET: u64 = 1 << 22;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Gabidulin { k: u32, s: u32 },
    Twisted { k: u32, s: u32, eta: Fe, h: u32 },
    DFamily { k: u32, s: u32, gamma: Fe },
    SpreadSet { gamma: Fe, s: u32, u: Fe, v: Fe },
    Generic,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Gabidulin { .. } => "G",
            Family::Twisted { .. } => "H",
            Family::DFamily { .. } => "D",
            Family::SpreadSet { .. } => "SpreadSet",
            Family::Generic => "Generic",
        }
    }

    pub fn params(&self) -> Value {
        match *self {
            Family::Gabidulin { k, s } => json!({"k": k, "s": s}),
            Family::Twisted { k, s, eta, h } => json!({"k": k, "s": s, "eta": eta, "h": h}),
            Family::DFamily { k, s, gamma } => json!({"k": k, "s": s, "gamma": gamma}),
            Family::SpreadSet { gamma, s, u, v } => json!({"gamma": gamma, "s": s, "u": u, "v": v}),
            Family::Generic => json!({}),
        }
    }
}

/// F_p view of a code: span in coordinate space plus a column-major parity
/// matrix H with v ∈ C iff H v = 0.
pub(crate) struct CodeSpace {
    pub(crate) fp: PrimeField,
    pub(crate) span: Span,
    /// Internal F_p basis as coefficient vectors: ζ^j g for each generator g.
    pub(crate) fp_basis: Vec<Vec<Fe>>,
    parity_cols: Vec<Vec<u32>>,
    parity_rows: usize,
}

impl CodeSpace {
    /// H·v; zero iff v lies in the code.
    pub(crate) fn residual(&self, v: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32; self.parity_rows];
        for (c, &x) in v.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (o, &h) in out.iter_mut().zip(&self.parity_cols[c]) {
                if h != 0 {
                    *o = self.fp.add(*o, self.fp.mul(x, h));
                }
            }
        }
        out
    }

    pub(crate) fn parity_rows(&self) -> usize {
        self.parity_rows
    }
}

pub struct RankMetricCode {
    tower: Arc<FieldTower>,
    family: Family,
    generators: Vec<LinearizedPoly>,
    space: OnceLock<CodeSpace>,
}

impl Clone for RankMetricCode {
    fn clone(&self) -> Self {
        RankMetricCode {
            tower: self.tower.clone(),
            family: self.family.clone(),
            generators: self.generators.clone(),
            space: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for RankMetricCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RankMetricCode")
            .field("family", &self.family)
            .field("dim_fq", &self.dim())
            .finish()
    }
}

/// Result of an exact minimum-distance computation.
#[derive(Clone, Debug, Serialize)]
pub struct DistanceCertificate {
    #[serde(rename = "dim_Fq")]
    pub dim_fq: u32,
    pub min_distance: u32,
    pub is_mrd: bool,
    pub witness_min_rank_codeword: LinearizedPoly,
    /// Number of codewords of each rank 0..=N.
    pub rank_distribution: Vec<u64>,
}

/// Result of the sampled fallback: `upper_bound` is the smallest rank seen
/// on a nonzero sample, which bounds the true distance from above.
#[derive(Clone, Debug, Serialize)]
pub struct SampledDistance {
    #[serde(rename = "dim_Fq")]
    pub dim_fq: u32,
    pub upper_bound: u32,
    pub samples: u64,
    pub seed: u64,
    pub witness: LinearizedPoly,
    pub rank_histogram: Vec<u64>,
}

fn check_step(tower: &FieldTower, s: u32) -> Result<()> {
    let big = tower.big_n();
    if gcd(s % big, big) != 1 {
        return Err(Error::BadStep { s, modulus: big });
    }
    Ok(())
}

fn check_k(k: u32, max: u32) -> Result<()> {
    if k < 1 || k > max {
        return Err(Error::BadK { k, min: 1, max });
    }
    Ok(())
}

fn idx(tower: &FieldTower, s: u32, i: u32) -> usize {
    ((s as u64 * i as u64) % tower.big_n() as u64) as usize
}

/// Generalized Gabidulin code {Σ_{i<k} a_i X^{q^{si}}}.
pub fn make_gabidulin(tower: &Arc<FieldTower>, k: u32, s: u32) -> Result<RankMetricCode> {
    check_step(tower, s)?;
    check_k(k, tower.big_n())?;
    let mut gens = Vec::new();
    for i in 0..k {
        for u in 0..tower.big_n() {
            gens.push(LinearizedPoly::monomial(tower, tower.power_of_omega(u as i64), idx(tower, s, i) as i64));
        }
    }
    Ok(RankMetricCode::structured(tower, Family::Gabidulin { k, s }, gens))
}

/// Twisted Gabidulin code {a_0X + ... + a_{k-1}X^{q^{s(k-1)}} + η a_0^{q^h} X^{q^{sk}}}.
pub fn make_twisted(tower: &Arc<FieldTower>, k: u32, s: u32, eta: Fe, h: u32) -> Result<RankMetricCode> {
    let big = tower.big_n();
    check_step(tower, s)?;
    check_k(k, big - 1)?;
    if h >= big {
        return Err(Error::BadTwist { h, modulus: big });
    }
    tower.element(eta.code())?;
    if !eta.is_zero() {
        let sign = if (k as u64 * big as u64) % 2 == 0 { Fe::ONE } else { tower.neg(Fe::ONE) };
        if tower.norm(eta) == sign {
            return Err(Error::BadEta);
        }
    }
    let top = idx(tower, s, k) as i64;
    let mut gens = Vec::new();
    for u in 0..big {
        let b = tower.power_of_omega(u as i64);
        let twist = tower.mul(eta, tower.frobenius(b, h as i64));
        gens.push(LinearizedPoly::from_terms(tower, &[(0, b), (top, twist)]));
    }
    for i in 1..k {
        for u in 0..big {
            gens.push(LinearizedPoly::monomial(tower, tower.power_of_omega(u as i64), idx(tower, s, i) as i64));
        }
    }
    Ok(RankMetricCode::structured(tower, Family::Twisted { k, s, eta, h }, gens))
}

/// The code {aX + Σ_{0<i<k} c_i X^{q^{is}} + γ b X^{q^{ks}} : a, b ∈ F_{q^n}}.
pub fn make_d(tower: &Arc<FieldTower>, k: u32, s: u32, gamma: Fe) -> Result<RankMetricCode> {
    check_step(tower, s)?;
    check_k(k, tower.big_n() - 1)?;
    tower.element(gamma.code())?;
    if !tower.has_nonsquare_norm(gamma) {
        return Err(Error::BadGamma);
    }
    let gens = d_generators(tower, k, s, gamma);
    Ok(RankMetricCode::structured(tower, Family::DFamily { k, s, gamma }, gens))
}

pub(crate) fn d_generators(tower: &Arc<FieldTower>, k: u32, s: u32, gamma: Fe) -> Vec<LinearizedPoly> {
    let n = tower.n();
    let half = tower.subfield_basis(n).expect("n divides 2n");
    let mut gens: Vec<LinearizedPoly> = half.iter().map(|&b| LinearizedPoly::monomial(tower, b, 0)).collect();
    for i in 1..k {
        for u in 0..tower.big_n() {
            gens.push(LinearizedPoly::monomial(tower, tower.power_of_omega(u as i64), idx(tower, s, i) as i64));
        }
    }
    let top = idx(tower, s, k) as i64;
    gens.extend(half.iter().map(|&b| LinearizedPoly::monomial(tower, tower.mul(gamma, b), top)));
    gens
}

/// The spread set {aX + γbX^{q^s}} tagged with its semifield parameters.
pub(crate) fn make_spread_set(tower: &Arc<FieldTower>, gamma: Fe, s: u32, u: Fe, v: Fe) -> RankMetricCode {
    let gens = d_generators(tower, 1, s, gamma);
    RankMetricCode::structured(tower, Family::SpreadSet { gamma, s, u, v }, gens)
}

impl RankMetricCode {
    fn structured(tower: &Arc<FieldTower>, family: Family, generators: Vec<LinearizedPoly>) -> Self {
        RankMetricCode {
            tower: tower.clone(),
            family,
            generators,
            space: OnceLock::new(),
        }
    }

    /// The F_q-span of `polys`; a basis is extracted greedily.
    pub fn generic(tower: &Arc<FieldTower>, polys: &[LinearizedPoly]) -> Result<Self> {
        let mut code = Self::structured(tower, Family::Generic, Vec::new());
        let t = tower;
        let fp = PrimeField::new(t.p());
        let cols = (t.big_n() * t.prime_degree()) as usize;
        let zetas = t.base_field_prime_basis();
        let mut span = Span::new(fp, cols);
        for f in polys {
            if !same_tower(f.tower(), tower) {
                return Err(Error::TowerMismatch);
            }
            if span.contains(&f.fp_coords()) {
                continue;
            }
            for &z in &zetas {
                span.insert(&f.scale(z).fp_coords());
            }
            code.generators.push(f.clone());
        }
        Ok(code)
    }

    /// Replace the family tag; the caller vouches that the codeword set matches.
    pub(crate) fn retag(mut self, family: Family) -> Self {
        self.family = family;
        self
    }

    pub fn tower(&self) -> &Arc<FieldTower> {
        &self.tower
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn generators(&self) -> &[LinearizedPoly] {
        &self.generators
    }

    /// F_q-dimension.
    pub fn dim(&self) -> u32 {
        self.generators.len() as u32
    }

    /// q^dim, saturating.
    pub fn size(&self) -> u128 {
        (self.tower.q() as u128).saturating_pow(self.dim())
    }

    pub(crate) fn space(&self) -> &CodeSpace {
        self.space.get_or_init(|| {
            let t = &self.tower;
            let fp = PrimeField::new(t.p());
            let cols = (t.big_n() * t.prime_degree()) as usize;
            let zetas = t.base_field_prime_basis();
            let fp_basis: Vec<Vec<Fe>> = self
                .generators
                .iter()
                .flat_map(|g| zetas.iter().map(move |&z| g.scale(z).coeffs().to_vec()))
                .collect();
            let vectors: Vec<Vec<u32>> = fp_basis.iter().map(|c| coords_raw(t, c)).collect();
            let span = Span::from_vectors(fp.clone(), cols, &vectors);
            debug_assert_eq!(span.dim(), fp_basis.len(), "generators must be independent");
            let parity = span.annihilator();
            let mut parity_cols = vec![vec![0u32; parity.len()]; cols];
            for (r, row) in parity.iter().enumerate() {
                for (c, &x) in row.iter().enumerate() {
                    parity_cols[c][r] = x;
                }
            }
            CodeSpace {
                fp,
                span,
                fp_basis,
                parity_rows: parity.len(),
                parity_cols,
            }
        })
    }

    /// Membership via the family's closed-form coefficient predicate.
    pub fn contains(&self, f: &LinearizedPoly) -> Result<bool> {
        if !same_tower(f.tower(), &self.tower) {
            return Err(Error::TowerMismatch);
        }
        let t = &self.tower;
        let c = f.coeffs();
        let support_within = |allowed: &[usize]| f.support().iter().all(|i| allowed.contains(i));
        Ok(match self.family {
            Family::Gabidulin { k, s } => {
                let allowed: Vec<usize> = (0..k).map(|i| idx(t, s, i)).collect();
                support_within(&allowed)
            }
            Family::Twisted { k, s, eta, h } => {
                let allowed: Vec<usize> = (0..=k).map(|i| idx(t, s, i)).collect();
                let top = idx(t, s, k);
                support_within(&allowed) && c[top] == t.mul(eta, t.frobenius(c[0], h as i64))
            }
            Family::DFamily { k, s, gamma } => d_predicate(t, f, k, s, gamma),
            Family::SpreadSet { gamma, s, .. } => d_predicate(t, f, 1, s, gamma),
            Family::Generic => self.span_contains(f),
        })
    }

    /// Membership via the F_p span, independent of the family predicate.
    pub fn span_contains(&self, f: &LinearizedPoly) -> bool {
        self.space().residual(&f.fp_coords()).iter().all(|&x| x == 0)
    }

    /// Equality as sets of codewords.
    pub fn same_codewords(&self, other: &RankMetricCode) -> bool {
        same_tower(&self.tower, &other.tower) && self.space().span.same_as(&other.space().span)
    }

    pub fn is_subcode_of(&self, other: &RankMetricCode) -> bool {
        same_tower(&self.tower, &other.tower) && self.space().span.is_subspace_of(&other.space().span)
    }

    /// All codewords, for codes within `budget`.
    pub fn codewords(&self, budget: u64) -> Result<Vec<LinearizedPoly>> {
        let size = self.size();
        if size > budget as u128 {
            return Err(Error::BudgetExceeded { size, budget });
        }
        let t = &self.tower;
        let sp = self.space();
        let basis: Vec<Vec<u32>> = sp.fp_basis.iter().map(|c| coords_raw(t, c)).collect();
        let span = Span::from_vectors(sp.fp.clone(), sp.span.ambient_dim(), &basis);
        Ok(span
            .elements()
            .iter()
            .map(|v| LinearizedPoly::from_fp_coords(t, v).expect("coordinate length"))
            .collect())
    }

    /// Image of every generator under `op`, as a Generic code.
    pub fn map_generators<F>(&self, op: F) -> Result<RankMetricCode>
    where
        F: Fn(&LinearizedPoly) -> Result<LinearizedPoly>,
    {
        let images = self.generators.iter().map(op).collect::<Result<Vec<_>>>()?;
        RankMetricCode::generic(&self.tower, &images)
    }

    /// Exact minimum distance by enumerating one representative of every
    /// F_p-projective class of nonzero codewords.
    pub fn min_distance(&self, budget: u64) -> Result<DistanceCertificate> {
        let size = self.size();
        if size > budget as u128 {
            return Err(Error::BudgetExceeded { size, budget });
        }
        let t = &self.tower;
        let big = t.big_n() as usize;
        let d = t.prime_degree() as usize;
        let e = t.e() as usize;
        let p = t.p() as u64;
        let sp = self.space();
        let fp = &sp.fp;
        let mats: Vec<Vec<u32>> = sp.fp_basis.iter().map(|c| fp_matrix_raw(t, c)).collect();
        let dim_p = mats.len();

        if dim_p == 0 {
            let mut dist = vec![0u64; big + 1];
            dist[0] = 1;
            return Ok(DistanceCertificate {
                dim_fq: 0,
                min_distance: 0,
                is_mrd: false,
                witness_min_rank_codeword: LinearizedPoly::zero(t),
                rank_distribution: dist,
            });
        }

        const CHUNK: u64 = 1 << 12;
        let mut jobs = Vec::new();
        for j in 0..dim_p {
            let total = p.pow(j as u32);
            let mut start = 0;
            while start < total {
                let end = (start + CHUNK).min(total);
                jobs.push((j, start, end));
                start = end;
            }
        }

        struct Partial {
            min: usize,
            first: (usize, u64),
            dist: Vec<u64>,
        }

        let partials: Vec<Partial> = jobs
            .into_par_iter()
            .map(|(j, start, end)| {
                let mut cur = mats[j].clone();
                let mut digits = vec![0u32; j];
                let mut s = start;
                for (i, dg) in digits.iter_mut().enumerate() {
                    *dg = (s % p) as u32;
                    s /= p;
                    for _ in 0..*dg {
                        add_into(fp, &mut cur, &mats[i]);
                    }
                }
                let mut scratch = vec![0u32; d * d];
                let mut part = Partial {
                    min: usize::MAX,
                    first: (j, start),
                    dist: vec![0u64; big + 1],
                };
                for index in start..end {
                    let r = small_rank(fp, &cur, d, &mut scratch) / e;
                    part.dist[r] += p - 1;
                    if r < part.min {
                        part.min = r;
                        part.first = (j, index);
                    }
                    if index + 1 < end {
                        let mut i = 0;
                        loop {
                            add_into(fp, &mut cur, &mats[i]);
                            digits[i] += 1;
                            if digits[i] as u64 == p {
                                digits[i] = 0;
                                i += 1;
                            } else {
                                break;
                            }
                        }
                    }
                }
                part
            })
            .collect();

        let mut dist = vec![0u64; big + 1];
        dist[0] = 1;
        let mut best = (usize::MAX, (0usize, 0u64));
        for part in &partials {
            for (a, b) in dist.iter_mut().zip(&part.dist) {
                *a += b;
            }
            if part.min < best.0 {
                best = (part.min, part.first);
            }
        }
        let (min, (j, index)) = best;
        let witness = self.fp_codeword(j, index);
        debug_assert_eq!(witness.rank() as usize, min);
        let dim_fq = self.dim();
        let min_distance = min as u32;
        Ok(DistanceCertificate {
            dim_fq,
            min_distance,
            is_mrd: mrd_bound_met(t.big_n(), dim_fq, min_distance),
            witness_min_rank_codeword: witness,
            rank_distribution: dist,
        })
    }

    /// Codeword with F_p coordinate 1 at position j and the base-p digits of
    /// `index` below it.
    fn fp_codeword(&self, j: usize, index: u64) -> LinearizedPoly {
        let t = &self.tower;
        let sp = self.space();
        let p = t.p() as u64;
        let mut coeffs = sp.fp_basis[j].clone();
        let mut s = index;
        for b in sp.fp_basis.iter().take(j) {
            let dg = (s % p) as u32;
            s /= p;
            if dg != 0 {
                let c = t.from_prime(dg);
                for (x, &y) in coeffs.iter_mut().zip(b) {
                    *x = t.add(*x, t.mul(c, y));
                }
            }
        }
        LinearizedPoly::from_raw(t, coeffs)
    }

    /// Random nonzero codewords; returns the smallest rank observed.
    pub fn min_distance_sampled(&self, samples: u64, seed: u64) -> SampledDistance {
        let t = &self.tower;
        let big = t.big_n() as usize;
        let sp = self.space();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut hist = vec![0u64; big + 1];
        let mut best: Option<(u32, LinearizedPoly)> = None;
        let mut drawn = 0;
        while drawn < samples && !sp.fp_basis.is_empty() {
            let mut coeffs = vec![Fe::ZERO; big];
            for b in &sp.fp_basis {
                let c = t.from_prime(rng.gen_range(0..t.p()));
                if c.is_zero() {
                    continue;
                }
                for (x, &y) in coeffs.iter_mut().zip(b) {
                    *x = t.add(*x, t.mul(c, y));
                }
            }
            let f = LinearizedPoly::from_raw(t, coeffs);
            if f.is_zero() {
                continue;
            }
            drawn += 1;
            let r = f.rank();
            hist[r as usize] += 1;
            if best.as_ref().is_none_or(|(b, _)| r < *b) {
                best = Some((r, f));
            }
        }
        let (upper_bound, witness) = best.unwrap_or((0, LinearizedPoly::zero(t)));
        SampledDistance {
            dim_fq: self.dim(),
            upper_bound,
            samples: drawn,
            seed,
            witness,
            rank_histogram: hist,
        }
    }

    /// True iff the code meets the Singleton-like bound with equality.
    pub fn is_mrd(&self, budget: u64) -> Result<bool> {
        Ok(self.min_distance(budget)?.is_mrd)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "family": self.family.name(),
            "params": self.family.params(),
            "tower": self.tower.spec(),
        });
        if self.family == Family::Generic {
            v["generators"] = serde_json::to_value(&self.generators).expect("polynomials serialize");
        }
        v
    }
}

pub(crate) fn mrd_bound_met(big_n: u32, dim: u32, d: u32) -> bool {
    d >= 1 && dim == big_n * (big_n - d + 1)
}

fn d_predicate(t: &FieldTower, f: &LinearizedPoly, k: u32, s: u32, gamma: Fe) -> bool {
    let c = f.coeffs();
    let allowed: Vec<usize> = (0..=k).map(|i| idx(t, s, i)).collect();
    let top = idx(t, s, k);
    let n = t.n();
    f.support().iter().all(|i| allowed.contains(i))
        && t.in_subfield(c[0], n)
        && t.in_subfield(t.div(c[top], gamma).expect("gamma is nonzero"), n)
}

#[inline]
fn add_into(fp: &PrimeField, acc: &mut [u32], m: &[u32]) {
    for (a, &b) in acc.iter_mut().zip(m) {
        if b != 0 {
            *a = fp.add(*a, b);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_tower;

    fn f81() -> Arc<FieldTower> {
        build_tower(3, 1, 2, Some(&[2, 0, 0, 2, 1])).unwrap()
    }

    #[test]
    fn scalar_code_has_full_distance() {
        let t = f81();
        let g = make_gabidulin(&t, 1, 1).unwrap();
        let cert = g.min_distance(DEFAULT_BUDGET).unwrap();
        assert_eq!(cert.min_distance, 4);
        assert!(cert.is_mrd);
        assert_eq!(cert.rank_distribution, vec![1, 0, 0, 0, 80]);
    }

    #[test]
    fn gabidulin_two() {
        let t = f81();
        let g = make_gabidulin(&t, 2, 1).unwrap();
        assert_eq!(g.size(), 3u128.pow(8));
        let cert = g.min_distance(DEFAULT_BUDGET).unwrap();
        assert_eq!(cert.min_distance, 3);
        assert_eq!(cert.witness_min_rank_codeword.rank(), 3);
        assert!(matches!(make_gabidulin(&t, 2, 2), Err(Error::BadStep { .. })));
        assert!(matches!(make_gabidulin(&t, 5, 1), Err(Error::BadK { .. })));
    }

    #[test]
    fn twisted_validation() {
        let t = f81();
        let w = t.omega();
        assert_eq!(make_twisted(&t, 2, 1, t.power_of_omega(2), 1).unwrap_err(), Error::BadEta);
        let h = make_twisted(&t, 2, 1, w, 1).unwrap();
        assert!(h.is_mrd(DEFAULT_BUDGET).unwrap());
        let h0 = make_twisted(&t, 2, 1, Fe::ZERO, 1).unwrap();
        assert!(h0.same_codewords(&make_gabidulin(&t, 2, 1).unwrap()));
        assert!(matches!(make_twisted(&t, 2, 1, w, 4), Err(Error::BadTwist { .. })));
    }

    #[test]
    fn d_family_membership() {
        let t = f81();
        let w = t.omega();
        let d = make_d(&t, 2, 1, w).unwrap();
        assert_eq!(d.dim(), 8);
        for g in d.generators() {
            assert!(d.contains(g).unwrap());
            assert!(d.span_contains(g));
        }
        assert!(d.contains(&LinearizedPoly::zero(&t)).unwrap());
        let lone = LinearizedPoly::monomial(&t, Fe::ONE, 2);
        assert!(!d.contains(&lone).unwrap());
        assert!(!d.span_contains(&lone));
        assert_eq!(make_d(&t, 2, 1, t.power_of_omega(2)).unwrap_err(), Error::BadGamma);
        assert!(matches!(make_d(&t, 4, 1, w), Err(Error::BadK { .. })));
    }

    #[test]
    fn d_family_distance() {
        let t = f81();
        let d = make_d(&t, 3, 1, t.omega()).unwrap();
        let cert = d.min_distance(DEFAULT_BUDGET).unwrap();
        assert_eq!(cert.min_distance, 2);
        assert!(cert.is_mrd);
        assert_eq!(cert.rank_distribution.iter().sum::<u64>(), 3u64.pow(12));
    }

    #[test]
    fn budget_and_sampling() {
        let t = f81();
        let d = make_d(&t, 3, 1, t.omega()).unwrap();
        assert!(matches!(d.min_distance(1000), Err(Error::BudgetExceeded { .. })));
        let s = d.min_distance_sampled(2000, 7);
        assert!(s.upper_bound >= 2);
        assert_eq!(s.samples, 2000);
    }

    #[test]
    fn generic_drops_dependent_generators() {
        let t = f81();
        let x = LinearizedPoly::identity(&t);
        let c = RankMetricCode::generic(&t, &[x.clone(), x.scale(t.from_prime(2)), x.scale(t.omega())]).unwrap();
        assert_eq!(c.dim(), 2);
        let all = c.codewords(DEFAULT_BUDGET).unwrap();
        assert_eq!(all.len(), 9);
        assert!(all.iter().all(|f| c.contains(f).unwrap()));
    }

    #[test]
    fn json_descriptor() {
        let t = f81();
        let d = make_d(&t, 2, 1, t.omega()).unwrap();
        let v = d.to_json();
        assert_eq!(v["family"], "D");
        assert_eq!(v["params"]["gamma"], 3);
        assert_eq!(v["tower"]["defining_poly"], json!([2, 0, 0, 2, 1]));
    }
}
