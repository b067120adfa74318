//! Exact arithmetic in the function field of y² = x³ + 1: build elements,
//! take valuations at rational points, closed sites, and infinity, assemble
//! full pole/zero divisors, and expand local jets.
//!
//! Run with: cargo run --example divisors_and_jets

use apparent_loci::{
    divisor_of, jet_at, ord, parse_funcelem, parse_poly, Curve, Place, Rat, Result,
};

fn main() -> Result<()> {
    // y² = x³ + 1: genus 1, with rational points such as (0, ±1) and (2, ±3).
    let curve = Curve::from_i64_coeffs(&[1, 0, 0, 1])?;
    println!("working over {curve}, genus {}", curve.genus());

    // Elements are a(x) + b(x)·y with exact rational coefficients.
    let u = parse_funcelem("(y + 1) / x", &curve)?;
    println!("\nu = {u}");

    // Valuations: at (0, -1) the numerator y + 1 vanishes to order 3 and x
    // to order 1, at (0, 1) only x vanishes, and at infinity degrees take
    // over. Every count is exact.
    for (x, y) in [(0, 1), (0, -1)] {
        let z = Place::affine(&curve, Rat::from_int(x), Rat::from_int(y))?;
        println!("ord of u at {z} = {}", ord(&u, &z)?);
    }
    println!("ord of u at inf = {}", ord(&u, &Place::infinity())?);

    // The full divisor gathers every zero and pole, including conjugate
    // points that only exist over extensions: they appear as closed sites
    // with their minimal polynomial, weighted by degree.
    let div = divisor_of(&u)?;
    println!("div(u) = {div}");
    println!("total degree = {} (always 0 on a complete curve)", div.degree());

    // A site that is irreducible over the rationals: the fiber over the
    // roots of x² + 1. Its two conjugate points are handled as one unit.
    let q = parse_poly("x^2 + 1")?;
    let site = Place::closed(&curve, q)?;
    println!("\nord of u at {site} = {}", ord(&u, &site)?);

    // Jets: the leading Taylor coefficients of an element along the local
    // parameter at a place. The first nonzero index equals the valuation.
    let z = Place::affine(&curve, Rat::from_int(2), Rat::from_int(3))?;
    let v = parse_funcelem("y - 2*x + 1", &curve)?;
    let jet = jet_at(&v, &z, 4)?;
    let coeffs: Vec<String> = jet.coeffs().iter().map(|c| c.to_string()).collect();
    println!("\njet of {v} at {z}: [{}]", coeffs.join(", "));
    println!("ord = {}, matching the first nonzero coefficient", ord(&v, &z)?);

    Ok(())
}
