use std::collections::BTreeMap;

use lrcone::embed::build_embedding;
use lrcone::repcalc::{
    branch, brauer_decompose, freudenthal_character, freudenthal_dominant, restrict_character,
    tensor_decompose, weyl_dim, CharacterMultiset, DominantCharCache,
};
use lrcone::rootsys::{RootSystem, Weight};
use proptest::prelude::*;

fn rs(s: &str) -> RootSystem {
    s.parse().unwrap()
}

fn w(v: &[i64]) -> Weight {
    Weight(v.to_vec())
}

/// Semistandard tableaux of shape `rows` with entries in `1..=n`, returned
/// as content vectors. Brute force, used as a Kostka-number oracle.
fn ssyt_contents(rows: &[usize], n: usize) -> Vec<Vec<usize>> {
    fn fill(
        rows: &[usize],
        n: usize,
        r: usize,
        c: usize,
        t: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if r == rows.len() {
            let mut content = vec![0; n];
            for row in t.iter() {
                for &x in row {
                    content[x - 1] += 1;
                }
            }
            out.push(content);
            return;
        }
        if c == rows[r] {
            fill(rows, n, r + 1, 0, t, out);
            return;
        }
        let left = if c > 0 { t[r][c - 1] } else { 1 };
        let above = if r > 0 { t[r - 1][c] + 1 } else { 1 };
        for x in left.max(above)..=n {
            t[r].push(x);
            fill(rows, n, r, c + 1, t, out);
            t[r].pop();
        }
    }
    let mut t = vec![Vec::new(); rows.len()];
    let mut out = Vec::new();
    fill(rows, n, 0, 0, &mut t, &mut out);
    out
}

/// Character of the `A_{n-1}` irrep with fundamental coordinates `lam`,
/// from tableaux.
fn tableau_character(lam: &[i64]) -> BTreeMap<Weight, u64> {
    let n = lam.len() + 1;
    let rows: Vec<usize> = (0..n - 1)
        .map(|i| lam[i..].iter().sum::<i64>() as usize)
        .collect();
    let mut ch = BTreeMap::new();
    for c in ssyt_contents(&rows, n) {
        let wt: Vec<i64> = (0..n - 1).map(|i| c[i] as i64 - c[i + 1] as i64).collect();
        *ch.entry(Weight(wt)).or_insert(0) += 1;
    }
    ch
}

#[test]
fn freudenthal_matches_tableaux_on_a2_and_a3() {
    for (spec, max) in [("A2", 3), ("A3", 2)] {
        let r = rs(spec);
        for lam in r.dominant_weights_up_to(max) {
            let ch = freudenthal_character(&r, &lam).unwrap();
            assert_eq!(ch.terms, tableau_character(&lam), "{spec} {lam}");
        }
    }
}

#[test]
fn clebsch_gordan() {
    let r = rs("A1");
    for a in 0..6i64 {
        for b in 0..6i64 {
            let d = tensor_decompose(&r, &w(&[a]), &w(&[b])).unwrap();
            let want: BTreeMap<Weight, u64> = ((a - b).abs()..=a + b)
                .step_by(2)
                .map(|k| (w(&[k]), 1))
                .collect();
            assert_eq!(d.terms, want, "{a} x {b}");
        }
    }
}

#[test]
fn diagonal_branching_is_clebsch_gordan() {
    let e = build_embedding("diag:A1").unwrap();
    let mut cache = DominantCharCache::default();
    for a in 0..5i64 {
        for b in 0..5i64 {
            let d = branch(&e.ghat_rs, &e.g_rs, &e.wm, &w(&[a, b]), &mut cache).unwrap();
            let want = tensor_decompose(&e.g_rs, &w(&[a]), &w(&[b])).unwrap();
            assert_eq!(d, want);
        }
    }
}

#[test]
fn sym2_branching_dimensions() {
    // V(1,0) of SL3 restricted to SO3 through Sym^2 is the spin-2 irreducible.
    let e = build_embedding("sym2:2").unwrap();
    let mut cache = DominantCharCache::default();
    let d = branch(&e.ghat_rs, &e.g_rs, &e.wm, &w(&[1, 0]), &mut cache).unwrap();
    assert_eq!(d.terms, BTreeMap::from([(w(&[2]), 1)]));
    for nu in e.ghat_rs.dominant_weights_up_to(3) {
        let d = branch(&e.ghat_rs, &e.g_rs, &e.wm, &nu, &mut cache).unwrap();
        assert_eq!(
            d.dimension(&e.g_rs).unwrap(),
            weyl_dim(&e.ghat_rs, &nu).unwrap()
        );
    }
}

#[test]
fn branch_agrees_with_full_restriction() {
    for name in ["diag:A2", "sym2:3", "wedge2:4", "tensor:2x2"] {
        let e = build_embedding(name).unwrap();
        let mut cache = DominantCharCache::default();
        for nu in e.ghat_rs.dominant_weights_up_to(1) {
            let full = freudenthal_character(&e.ghat_rs, &nu).unwrap();
            let slow =
                brauer_decompose(&e.g_rs, &restrict_character(&e.wm, &full).unwrap()).unwrap();
            let fast = branch(&e.ghat_rs, &e.g_rs, &e.wm, &nu, &mut cache).unwrap();
            assert_eq!(fast, slow, "{name} {nu}");
        }
    }
}

fn system() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec![
        "A1", "A2", "B2", "C2", "A1xA1", "A3", "B3", "C3", "D4",
    ])
}

fn dominant(r: &RootSystem, max: i64) -> impl Strategy<Value = Weight> {
    prop::collection::vec(0..=max, r.rank()).prop_map(Weight)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn freudenthal_total_is_weyl_dim((spec, lam) in system().prop_flat_map(|s| (Just(s), dominant(&rs(s), 2)))) {
        let r = rs(spec);
        let ch = freudenthal_character(&r, &lam).unwrap();
        prop_assert_eq!(ch.total_dim(), weyl_dim(&r, &lam).unwrap());
        prop_assert!(ch.is_weyl_invariant(&r));
        prop_assert_eq!(ch.dominant_part(&r), freudenthal_dominant(&r, &lam).unwrap());
        prop_assert_eq!(ch.mult(&lam), 1);
    }

    #[test]
    fn tensor_product_dimensions(
        (spec, a, b) in prop::sample::select(vec!["A1", "A2", "B2", "A1xA1"])
            .prop_flat_map(|s| (Just(s), dominant(&rs(s), 2), dominant(&rs(s), 2)))
    ) {
        let r = rs(spec);
        let ab = tensor_decompose(&r, &a, &b).unwrap();
        let ba = tensor_decompose(&r, &b, &a).unwrap();
        prop_assert_eq!(&ab, &ba);
        let da = weyl_dim(&r, &a).unwrap();
        let db = weyl_dim(&r, &b).unwrap();
        prop_assert_eq!(ab.dimension(&r).unwrap(), da * db);
        let top = Weight(a.iter().zip(b.iter()).map(|(x, y)| x + y).collect());
        prop_assert_eq!(ab.mult(&top), 1);
    }

    #[test]
    fn restriction_commutes_with_products(
        name in prop::sample::select(vec!["diag:A1", "sym2:2", "tensor:2x2"]),
        a in prop::collection::vec(0i64..=2, 4),
        b in prop::collection::vec(0i64..=2, 4),
    ) {
        let e = build_embedding(name).unwrap();
        let k = e.ghat_rs.rank();
        let (a, b) = (Weight(a[..k].to_vec()), Weight(b[..k].to_vec()));
        let ca = freudenthal_character(&e.ghat_rs, &a).unwrap();
        let cb = freudenthal_character(&e.ghat_rs, &b).unwrap();
        let lhs = restrict_character(&e.wm, &ca.product(&cb)).unwrap();
        let rhs = restrict_character(&e.wm, &ca).unwrap().product(&restrict_character(&e.wm, &cb).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn brauer_inverts_sums(a in prop::collection::vec(0i64..=3, 2), b in prop::collection::vec(0i64..=3, 2)) {
        let r = rs("A2");
        let (a, b) = (Weight(a), Weight(b));
        let sum: CharacterMultiset = freudenthal_character(&r, &a)
            .unwrap()
            .sum(&freudenthal_character(&r, &b).unwrap());
        let d = brauer_decompose(&r, &sum).unwrap();
        let want = if a == b { BTreeMap::from([(a, 2)]) } else { BTreeMap::from([(a, 1), (b, 1)]) };
        prop_assert_eq!(d.terms, want);
    }
}
