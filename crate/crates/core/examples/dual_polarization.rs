//! Dual polarization types and the dual form of a skew lattice in a
//! scrambled basis.

use prymlab::symplectic::{random_unimodular, PolarizationType, SkewLattice};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> prymlab::Result<()> {
    for s in ["1,1,2", "1,1,3", "1,2,4", "2,4"] {
        let k = PolarizationType::parse(s)?;
        println!("{k} -> {} -> {}", k.dual(), k.dual().dual());
    }

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let k = PolarizationType::parse("1,2,6")?;
    let u = random_unimodular(6, 10, &mut rng);
    let lattice = SkewLattice::new(k.standard_form().congruence(&u))?;
    let basis = lattice.symplectic_basis()?;
    println!("recovered type {}", basis.kind);
    println!("dual form type {}", lattice.dual_form()?.alternating_divisors()?);
    println!("{:?}", lattice.check_duality()?);
    Ok(())
}
