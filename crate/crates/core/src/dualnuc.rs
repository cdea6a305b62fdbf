//! Delsarte duals, adjoint codes and the middle/right nuclei of codes.
//!
//! The dual uses b(f, g) = Tr(Σ a_i b_i). For an F_q-linear code the
//! orthogonal complement is the same whether the trace goes down to F_q or
//! to F_p, so the complement is computed over F_p with the absolute trace.

use std::sync::Arc;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::codes::{make_d, make_gabidulin, Family, RankMetricCode, DEFAULT_BUDGET};
use crate::error::Result;
use crate::field::{Fe, FieldTower};
use crate::linalg::{nullspace, PrimeField};
use crate::linpoly::{compose_raw, coords_raw, from_coords_raw, gcd, LinearizedPoly};

/// Which composition side defines a nucleus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// f ∘ φ ∈ C
    Middle,
    /// φ ∘ f ∈ C
    Right,
}

/// An F_q-space of linearized polynomials arising as a nucleus.
#[derive(Clone, Debug)]
pub struct NucleusSpace {
    space: RankMetricCode,
}

impl Serialize for NucleusSpace {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("NucleusSpace", 2)?;
        st.serialize_field("dim_Fq", &self.dim())?;
        st.serialize_field("basis", self.basis())?;
        st.end()
    }
}

impl NucleusSpace {
    pub fn from_polys(tower: &Arc<FieldTower>, polys: &[LinearizedPoly]) -> Result<Self> {
        Ok(NucleusSpace {
            space: RankMetricCode::generic(tower, polys)?,
        })
    }

    /// {aX : a ∈ F_{q^m}}.
    pub fn scalars(tower: &Arc<FieldTower>, m: u32) -> Result<Self> {
        let basis = tower.subfield_basis(m)?;
        let polys: Vec<LinearizedPoly> = basis.iter().map(|&b| LinearizedPoly::monomial(tower, b, 0)).collect();
        Self::from_polys(tower, &polys)
    }

    pub fn dim(&self) -> u32 {
        self.space.dim()
    }

    pub fn size(&self) -> u128 {
        self.space.size()
    }

    pub fn basis(&self) -> &[LinearizedPoly] {
        self.space.generators()
    }

    pub fn contains(&self, f: &LinearizedPoly) -> bool {
        self.space.span_contains(f)
    }

    pub fn elements(&self) -> Result<Vec<LinearizedPoly>> {
        self.space.codewords(DEFAULT_BUDGET)
    }

    pub fn same_as(&self, other: &NucleusSpace) -> bool {
        self.space.same_codewords(&other.space)
    }

    /// {φ̂ : φ in the space}.
    pub fn adjoint_image(&self) -> Result<NucleusSpace> {
        Ok(NucleusSpace {
            space: self.space.map_generators(|f| Ok(f.adjoint()))?,
        })
    }

    /// Closed under composition and every nonzero element invertible.
    pub fn is_field(&self) -> Result<bool> {
        let basis = self.basis();
        for a in basis {
            for b in basis {
                if !self.contains(&a.compose(b)?) {
                    return Ok(false);
                }
            }
        }
        Ok(self.elements()?.iter().all(|f| f.is_zero() || f.is_bijective()))
    }
}

/// Delsarte dual under b(f, g) = Tr(Σ a_i b_i).
pub fn delsarte_dual(code: &RankMetricCode) -> Result<RankMetricCode> {
    let t = code.tower();
    let d = t.prime_degree() as usize;
    let big = t.big_n() as usize;
    let cols = big * d;
    let fp = PrimeField::new(t.p());
    // Gram matrix of the absolute trace form on one coefficient block.
    let gram: Vec<Vec<u32>> = (0..d)
        .map(|u| (0..d).map(|v| t.trace_to_prime(t.power_of_omega((u + v) as i64))).collect())
        .collect();
    let sp = code.space();
    let rows: Vec<Vec<u32>> = sp
        .fp_basis
        .iter()
        .map(|c| {
            let x = coords_raw(t, c);
            let mut row = vec![0u32; cols];
            for blk in 0..big {
                for v in 0..d {
                    let mut acc = 0;
                    for u in 0..d {
                        let xu = x[blk * d + u];
                        if xu != 0 {
                            acc = fp.add(acc, fp.mul(xu, gram[u][v]));
                        }
                    }
                    row[blk * d + v] = acc;
                }
            }
            row
        })
        .collect();
    let polys: Vec<LinearizedPoly> = nullspace(&fp, &rows, cols)
        .iter()
        .map(|v| LinearizedPoly::from_raw(t, from_coords_raw(t, v)))
        .collect();
    RankMetricCode::generic(t, &polys)
}

/// {f̂ : f ∈ C}.
pub fn adjoint_code(code: &RankMetricCode) -> Result<RankMetricCode> {
    code.map_generators(|f| Ok(f.adjoint()))
}

/// {f ∘ X^{q^m} : f ∈ C}, i.e. substituting X^{q^m} for X.
pub fn substitute_monomial(code: &RankMetricCode, m: i64) -> Result<RankMetricCode> {
    let x = LinearizedPoly::monomial(code.tower(), Fe::ONE, m);
    code.map_generators(|f| f.compose(&x))
}

pub fn middle_nucleus(code: &RankMetricCode) -> Result<NucleusSpace> {
    nucleus(code, Side::Middle)
}

pub fn right_nucleus(code: &RankMetricCode) -> Result<NucleusSpace> {
    nucleus(code, Side::Right)
}

/// Solve for all φ with f∘φ ∈ C (middle) or φ∘f ∈ C (right) for every
/// generator f, as one F_p-linear system in the coordinates of φ.
pub fn nucleus(code: &RankMetricCode, side: Side) -> Result<NucleusSpace> {
    let t = code.tower();
    let d = t.prime_degree() as usize;
    let big = t.big_n() as usize;
    let cols = big * d;
    let sp = code.space();
    let fp = &sp.fp;
    let gens: Vec<&[Fe]> = code.generators().iter().map(|g| g.coeffs()).collect();
    // Column b is H·(f∘φ_b) stacked over all generators f.
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(cols);
    let mut unit_digits = vec![0u32; d];
    let mut phi = vec![Fe::ZERO; big];
    let mut out = vec![Fe::ZERO; big];
    for i in 0..big {
        for u in 0..d {
            unit_digits.iter_mut().for_each(|x| *x = 0);
            unit_digits[u] = 1;
            phi.iter_mut().for_each(|x| *x = Fe::ZERO);
            phi[i] = t.from_digits(&unit_digits);
            let mut col = Vec::with_capacity(gens.len() * sp.parity_rows());
            for f in &gens {
                match side {
                    Side::Middle => compose_raw(t, f, &phi, &mut out),
                    Side::Right => compose_raw(t, &phi, f, &mut out),
                }
                col.extend(sp.residual(&coords_raw(t, &out)));
            }
            columns.push(col);
        }
    }
    let nrows = columns.first().map_or(0, |c| c.len());
    let rows: Vec<Vec<u32>> = (0..nrows).map(|r| columns.iter().map(|c| c[r]).collect()).collect();
    let polys: Vec<LinearizedPoly> = nullspace(fp, &rows, cols)
        .iter()
        .map(|v| LinearizedPoly::from_raw(t, from_coords_raw(t, v)))
        .collect();
    NucleusSpace::from_polys(t, &polys)
}

/// F_p-basis of the codewords whose support lies within `indices`.
pub fn subcode_on_support(code: &RankMetricCode, indices: &[usize]) -> Vec<LinearizedPoly> {
    let t = code.tower();
    let d = t.prime_degree() as usize;
    let big = t.big_n() as usize;
    let sp = code.space();
    let basis: Vec<Vec<u32>> = sp.fp_basis.iter().map(|c| coords_raw(t, c)).collect();
    let outside: Vec<usize> = (0..big)
        .filter(|i| !indices.contains(i))
        .flat_map(|i| (i * d)..(i * d + d))
        .collect();
    let rows: Vec<Vec<u32>> = outside.iter().map(|&c| basis.iter().map(|b| b[c]).collect()).collect();
    nullspace(&sp.fp, &rows, basis.len())
        .iter()
        .map(|x| {
            let mut v = vec![0u32; big * d];
            for (coef, b) in x.iter().zip(&basis) {
                if *coef != 0 {
                    for (a, &y) in v.iter_mut().zip(b) {
                        *a = sp.fp.add(*a, sp.fp.mul(*coef, y));
                    }
                }
            }
            LinearizedPoly::from_raw(t, from_coords_raw(t, &v))
        })
        .collect()
}

/// Identify a Gabidulin or D-family code by its codeword set and return it
/// retagged; `None` if no structured shape matches.
pub fn recognize(code: &RankMetricCode) -> Option<RankMetricCode> {
    let t = code.tower();
    let big = t.big_n();
    let dim = code.dim();
    if dim % big != 0 {
        return None;
    }
    let k = dim / big;
    for s in (1..big).filter(|&s| gcd(s, big) == 1) {
        if let Ok(g) = make_gabidulin(t, k, s) {
            if g.same_codewords(code) {
                return Some(code.clone().retag(g.family().clone()));
            }
        }
        if k >= big {
            continue;
        }
        let top = ((s * k) % big) as usize;
        let tops = subcode_on_support(code, &[top]);
        let Some(c) = tops.iter().map(|f| f.coeffs()[top]).find(|c| !c.is_zero()) else {
            continue;
        };
        if let Ok(dc) = make_d(t, k, s, c) {
            if dc.same_codewords(code) {
                return Some(code.clone().retag(Family::DFamily { k, s, gamma: c }));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{make_d, make_gabidulin, make_twisted};
    use crate::field::build_tower;

    fn f81() -> Arc<FieldTower> {
        build_tower(3, 1, 2, Some(&[2, 0, 0, 2, 1])).unwrap()
    }

    #[test]
    fn dual_dimensions() {
        let t = f81();
        let full = make_gabidulin(&t, 4, 1).unwrap();
        assert_eq!(delsarte_dual(&full).unwrap().dim(), 0);
        for k in 1..4 {
            let d = make_d(&t, k, 1, t.omega()).unwrap();
            let dual = delsarte_dual(&d).unwrap();
            assert_eq!(d.dim() + dual.dim(), 16);
        }
    }

    #[test]
    fn dual_of_gabidulin_is_gabidulin() {
        let t = f81();
        let g = make_gabidulin(&t, 1, 1).unwrap();
        let dual = delsarte_dual(&g).unwrap();
        // {aX}^⊥ = {f : a_0 = 0}, a shifted Gabidulin code
        let shifted = substitute_monomial(&dual, -1).unwrap();
        assert!(shifted.same_codewords(&make_gabidulin(&t, 3, 1).unwrap()));
        assert!(recognize(&shifted).is_some());
    }

    #[test]
    fn recognizes_d_family() {
        let t = f81();
        let d = make_d(&t, 2, 1, t.omega()).unwrap();
        let generic = RankMetricCode::generic(&t, d.generators()).unwrap();
        let r = recognize(&generic).unwrap();
        assert!(matches!(r.family(), Family::DFamily { k: 2, s: 1, .. }));
    }

    #[test]
    fn nuclei_of_d_and_g() {
        let t = f81();
        let f9 = NucleusSpace::scalars(&t, 2).unwrap();
        let d = make_d(&t, 2, 1, t.omega()).unwrap();
        assert!(middle_nucleus(&d).unwrap().same_as(&f9));
        assert!(right_nucleus(&d).unwrap().same_as(&f9));
        let g = make_gabidulin(&t, 2, 1).unwrap();
        assert_eq!(middle_nucleus(&g).unwrap().size(), 81);
        assert_eq!(right_nucleus(&g).unwrap().size(), 81);
        let full = make_gabidulin(&t, 4, 1).unwrap();
        assert_eq!(right_nucleus(&full).unwrap().dim(), 16);
    }

    #[test]
    fn twisted_right_nucleus() {
        let t = f81();
        let h = make_twisted(&t, 2, 1, t.omega(), 1).unwrap();
        let nr = right_nucleus(&h).unwrap();
        assert_eq!(nr.size(), 3);
        assert!(nr.is_field().unwrap());
    }

    #[test]
    fn adjoint_is_involution() {
        let t = f81();
        let d = make_d(&t, 2, 1, t.omega()).unwrap();
        let back = adjoint_code(&adjoint_code(&d).unwrap()).unwrap();
        assert!(back.same_codewords(&d));
    }

    #[test]
    fn nucleus_serializes() {
        let t = f81();
        let f9 = NucleusSpace::scalars(&t, 2).unwrap();
        let v = serde_json::to_value(&f9).unwrap();
        assert_eq!(v["dim_Fq"], 2);
        assert_eq!(v["basis"].as_array().unwrap().len(), 2);
    }
}
