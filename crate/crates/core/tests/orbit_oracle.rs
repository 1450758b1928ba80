//! Braid orbits recomputed from scratch: every raw tuple, moves written out
//! directly, conjugation by transpositions, and a plain union-find.

use std::collections::HashMap;

use prymlab::braid::braid_orbits;
use prymlab::hurwitz::{enumerate_simple_classes, DEFAULT_GUARD};
use prymlab::perm::is_transitive;
use prymlab::Permutation;

type Raw = (Vec<Permutation>, Permutation, Permutation);

fn relation(t: &Raw) -> bool {
    let mut p = Permutation::identity(t.1.degree());
    for x in &t.0 {
        p = &p * x;
    }
    let comm = &(&(&t.1 * &t.2) * &t.1.inverse()) * &t.2.inverse();
    (&p * &comm).is_identity()
}

fn all_tuples(d: usize, n: usize) -> Vec<Raw> {
    let taus = Permutation::transpositions(d);
    let group = Permutation::all(d);
    let mut words: Vec<Vec<Permutation>> = vec![vec![]];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w| {
                taus.iter().map(move |t| {
                    let mut w = w.clone();
                    w.push(t.clone());
                    w
                })
            })
            .collect();
    }
    let mut out = Vec::new();
    for w in &words {
        for s in &group {
            for r in &group {
                let t = (w.clone(), s.clone(), r.clone());
                let mut gens = w.clone();
                gens.push(s.clone());
                gens.push(r.clone());
                if relation(&t) && is_transitive(d, &gens) {
                    out.push(t);
                }
            }
        }
    }
    out
}

fn neighbours(t: &Raw) -> Vec<Raw> {
    let (taus, s, r) = t;
    let n = taus.len();
    let d = s.degree();
    let mut out = Vec::new();
    for i in 0..n.saturating_sub(1) {
        let mut w = taus.clone();
        let (a, b) = (taus[i].clone(), taus[i + 1].clone());
        w[i] = &(&a * &b) * &a.inverse();
        w[i + 1] = a;
        out.push((w, s.clone(), r.clone()));
    }
    if n > 0 {
        let last = taus[n - 1].clone();
        let w = &(&(&last * s) * r) * &s.inverse();
        let mut taus_g = taus.clone();
        taus_g[n - 1] = &(&w * &last) * &w.inverse();
        out.push((taus_g, &last * s, r.clone()));

        let v = &(&(&(&last * s) * r) * &s.inverse()) * &r.inverse();
        let moved = &(&s.inverse() * &last) * s;
        let mut taus_d = taus.clone();
        taus_d[n - 1] = &(&v * &moved) * &v.inverse();
        out.push((taus_d, s.clone(), &moved * r));
    }
    for g in Permutation::transpositions(d) {
        let c = |x: &Permutation| &(&g.inverse() * x) * &g;
        out.push((taus.iter().map(c).collect(), c(s), c(r)));
    }
    out
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn oracle_orbits(d: usize, n: usize) -> usize {
    let tuples = all_tuples(d, n);
    let index: HashMap<&Raw, usize> = tuples.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut parent: Vec<usize> = (0..tuples.len()).collect();
    for (k, t) in tuples.iter().enumerate() {
        for nb in neighbours(t) {
            assert!(relation(&nb), "move broke the relation");
            let j = index[&nb];
            let (a, b) = (find(&mut parent, k), find(&mut parent, j));
            parent[a] = b;
        }
    }
    (0..tuples.len()).filter(|&k| find(&mut parent, k) == k).count()
}

#[test]
fn orbit_counts_match_oracle() {
    for (d, n) in [(2, 2), (2, 4), (3, 2), (3, 4), (3, 6)] {
        let classes = enumerate_simple_classes(d, n, DEFAULT_GUARD).unwrap();
        let ours = braid_orbits(&classes).unwrap().count();
        assert_eq!(ours, oracle_orbits(d, n), "d={d} n={n}");
        assert_eq!(ours, 1, "d={d} n={n}");
    }
}
