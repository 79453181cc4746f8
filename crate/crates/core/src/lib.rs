//! Exact motivic and topological zeta functions of hypersurface germs.
//!
//! Everything is computed from normal-crossing resolution data of a germ
//! `f: (C^d, 0) -> (C, 0)`: components carry the multiplicities `N` (of
//! `f` pulled back), `nu` (one plus the discrepancy of the volume form)
//! and `M` (multiplicity in the pullback of the first exceptional
//! hyperplane), and strata carry their classes in the Grothendieck ring.
//! For plane curves the resolution data itself is produced by iterated
//! point blowups from the defining polynomial.
//!
//! The coefficient ring throughout is `Z[L, L^-1]`, the subring of the
//! localized Grothendieck ring of varieties generated by the class `L`
//! of the affine line. All arithmetic is exact: integer coefficients are
//! arbitrary precision and rationals are exact fractions. There is no
//! floating point anywhere in the crate.
//!
//! Module map:
//!
//! - [`motivic`] - Laurent polynomials in `L` and the Euler-characteristic
//!   ring morphism.
//! - [`series`] - sparse truncated power series in `r >= 1` variables with
//!   motivic coefficients.
//! - [`intseries`] - dense truncated integer series (specialization targets).
//! - [`power`] - the power structure `A(t)^m`: Exp/Log, Kapranov zeta and
//!   symmetric powers.
//! - [`resolution`] - resolution data, validation, dual graphs.
//! - [`polynomial`] - exact rational polynomials in one and two variables,
//!   plus the input parser.
//! - [`curve`] - embedded resolution of plane-curve germs by blowups.
//! - [`zeta`] - contact series and the motivic monodromy zeta functions,
//!   with Euler specialization.
//! - [`topzeta`] - topological zeta functions, poles, and the
//!   Monodromy-Conjecture checker.

pub mod curve;
pub mod intseries;
pub mod motivic;
pub mod polynomial;
pub mod power;
pub mod resolution;
pub mod series;
pub mod topzeta;
pub mod zeta;

pub use curve::{resolve_germ, ResolveError, Resolved};
pub use intseries::IntSeries;
pub use motivic::MotivicClass;
pub use polynomial::{parse_poly, BiPoly, ParseError, RatPoly};
pub use power::{kapranov_zeta, ps_exp, ps_log, ps_pow, ExpCoefficients};
pub use resolution::{Component, ComponentKind, DualGraph, ResolutionData, Stratum};
pub use series::{ExponentVector, MotivicSeries};
pub use topzeta::{
    check_monodromy_conjecture, eigenvalue_test, z_branch, z_top, PoleReport, RationalFunctionS,
};
pub use zeta::{
    classical_monodromy_zeta, contact_series, eta_series, euler_specialize_series, mobius,
    motivic_monodromy_zeta, motivic_monodromy_zeta_products, two_variable_contact_series,
    BranchWeight, CyclotomicFactorization, SpaceKind, ZetaError,
};

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn values_are_shareable_across_threads() {
        assert_send_sync::<MotivicClass>();
        assert_send_sync::<MotivicSeries>();
        assert_send_sync::<ResolutionData>();
        assert_send_sync::<CyclotomicFactorization>();
        assert_send_sync::<RationalFunctionS>();
    }
}
