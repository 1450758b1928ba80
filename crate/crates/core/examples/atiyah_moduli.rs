//! Bundle arithmetic on an elliptic curve and the moduli counts for
//! rank-two Tschirnhausen modules.

use prymlab::atiyah::{tschirnhausen_degree, Bundle, ModuliCase};

fn main() -> prymlab::Result<()> {
    for expr in ["L(L,2) ⊗ F(2,0)", "L(L,1) ⊕ L(M,2)", "F(2,0) ⊗ F(3,0)", "F(2,3)"] {
        let e = Bundle::parse(expr)?;
        println!("{expr}: {e} h0={} h0(End)={}", e.h0(), e.h0_end()?);
        if e.rank()? == 2 {
            match e.sym3_twisted() {
                Ok(s) => println!("  S³E ⊗ det⁻¹ = {s}"),
                Err(err) => println!("  S³E ⊗ det⁻¹: {err}"),
            }
        }
    }

    println!("case  n  bound  closed");
    for c in ModuliCase::grid(8) {
        let m = c.count()?;
        println!("{:>4} {:>2} {:>6}  {} = {}", m.case, m.n, m.bound, m.closed_label, m.closed_form);
    }

    let (e, r) = tschirnhausen_degree(3, 4, 1)?;
    println!("triple cover of genus 4 over an elliptic curve: deg E = {e}, deg R = {r}");
    Ok(())
}
