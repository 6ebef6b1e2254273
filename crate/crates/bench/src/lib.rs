//! Fixed inputs shared by the benchmarks.

use std::sync::Arc;

use charp::{Ideal, MonomialOrder, PolyRing, Ring};

pub fn ring(p: u64, vars: &[&str]) -> Arc<Ring> {
    Ring::polynomial(PolyRing::new(p, vars, MonomialOrder::Grevlex).expect("valid ring"))
}

pub fn ideal(ring: &Arc<Ring>, gens: &[&str]) -> Ideal {
    Ideal::parse(ring, gens).expect("valid generators")
}

/// `F_2[U,V]/(V^2 + U^3)`.
pub fn cusp() -> Arc<Ring> {
    let base = PolyRing::new(2, &["U", "V"], MonomialOrder::Grevlex).expect("valid ring");
    let j = charp::parse_polynomial(&base, "V^2 + U^3").expect("valid relation");
    Ring::quotient(base, vec![j], true).expect("valid quotient")
}
