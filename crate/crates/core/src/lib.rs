//! Exact-arithmetic toolkit for small Seifert fibered spaces with
//! complementary legs.
//!
//! Everything in this crate is computed over arbitrary-precision rationals;
//! there is no floating point anywhere. The main layers are:
//!
//! * [`rational`] / [`cf`] — reduced fractions, Hirzebruch-Jung continued
//!   fractions, Riemenschneider duals, modular inverses and the `I`-function.
//! * [`lisca`] — membership of `p/q` in Lisca's set of lens-space fractions
//!   bounding rational homology balls, with re-checkable certificates.
//! * [`matrix`] / [`tridiag`] / [`plumbing`] — exact linear algebra for the
//!   star-shaped plumbing intersection form, its closed-form block inverse,
//!   and the theta invariants of the associated plane fields.
//! * [`seifert`] — normalized Seifert data, the one-fiber surgery
//!   presentation, plumbing conversions, orientation reversal and the
//!   dihedral parameter identities.
//! * [`classify`] — smooth and symplectic rational-homology-ball verdicts
//!   with provenance for every rule that fires.
//! * [`verify`] — the grid-based invariant suites behind `cleg verify`.

pub mod cf;
pub mod classify;
pub mod error;
pub mod lisca;
pub mod matrix;
pub mod plumbing;
pub mod rational;
pub mod seifert;
pub mod tridiag;
pub mod verify;

pub use cf::CFString;
pub use classify::FillingVerdict;
pub use error::{Error, Result};
pub use matrix::ExactMatrix;
pub use rational::Rational;
pub use seifert::SeifertData;

/// A sign choice, used both for the `±` cases of Lisca's families and for
/// the two non-balanced contact structures `ξ±`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn name(self) -> &'static str {
        match self {
            Sign::Plus => "Plus",
            Sign::Minus => "Minus",
        }
    }
}
