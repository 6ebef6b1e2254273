//! Exact ideal theory in prime characteristic.
//!
//! Polynomial rings over `F_p` and their reduced quotients, with Frobenius
//! powers, Frobenius roots and F-closures of ideals; ideals of the perfect
//! closure `R^∞` represented by their f-sequences; monomial primary
//! decomposition and certificates of linear growth of primary
//! decompositions along f-sequences.

pub mod decomp;
pub mod error;
pub mod field;
pub mod frobenius;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod parse;
pub mod perfection;
pub mod poly;
pub mod ring;

pub use error::{BudgetLimit, Error, Result};
pub use field::PrimeField;
pub use frobenius::{f_closure, frob_power, frob_root, is_f_closed, FClosureResult};
pub use groebner::GroebnerBudget;
pub use ideal::Ideal;
pub use monomial::{Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use poly::Polynomial;
pub use ring::{PolyRing, Ring};
pub use decomp::{Decomposition, MonomialPrime, PrimaryComponent};
pub use perfection::{FSequence, PerfectionElement, PerfectionIdeal};
