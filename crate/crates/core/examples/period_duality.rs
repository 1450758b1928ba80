//! Dual period matrices and the action of `Γ_D` on Siegel space.

use prymlab::period::{distance, dual_period, gamma_action, random_gamma, sample_siegel};
use prymlab::symplectic::PolarizationType;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> prymlab::Result<()> {
    let kind = PolarizationType::parse("1,1,2")?;
    let p = sample_siegel(3, 7).with_type(kind.clone())?;
    let dual = dual_period(&p)?;
    println!("{}", serde_json::to_string(&p)?);
    println!("{}", serde_json::to_string(&dual)?);
    let twice = dual_period(&dual)?;
    println!("double dual residual {:e}", distance(twice.z(), p.z()));
    println!("{:?}", dual.as_raw().riemann_check()?);

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let m = random_gamma(&kind, 5, &mut rng);
    let moved = gamma_action(&p, &m)?;
    let back = moved.as_raw().riemann_check()?;
    println!("after Γ_D: Riemann relations hold = {}", back.pass);
    Ok(())
}
