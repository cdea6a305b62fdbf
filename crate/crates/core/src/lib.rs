//! Rank-metric codes over finite field towers F_q ⊂ F_{q^n} ⊂ F_{q^{2n}}:
//! linearized polynomials, MRD code families, duals, nuclei, the
//! associated semifields and equivalence search.

pub mod error;
pub mod field;
pub mod linalg;
pub mod linpoly;
pub mod codes;
pub mod dualnuc;
pub mod semifield;
pub mod equivalence;

pub use error::{Error, Result};
pub use field::{build_from_spec, build_tower, Fe, FieldTower, TowerSpec};
pub use linpoly::{FqMatrix, LinearizedPoly, NormCheck, Shape};
pub use codes::{make_d, make_gabidulin, make_twisted, DistanceCertificate, Family, RankMetricCode, SampledDistance, DEFAULT_BUDGET};
pub use dualnuc::{adjoint_code, delsarte_dual, middle_nucleus, nucleus, recognize, right_nucleus, subcode_on_support, substitute_monomial, NucleusSpace, Side};
pub use semifield::{semifield_nuclei, HkParams, MulTable, Nuclei};
pub use equivalence::{apply_map, automorphisms, binomial_criterion, binomial_equiv_search, binomial_system_solutions, combined_equiv_search, monomial_criterion, monomial_equiv_search, verify_map, CriterionVerdict, EquivalenceCertificate, EquivalenceMap, SearchShape, Verdict};
