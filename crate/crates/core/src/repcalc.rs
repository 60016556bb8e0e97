//! Characters of irreducible modules and their decompositions.
//!
//! * `weyl_dim`: the Weyl dimension formula.
//! * `freudenthal_character`: weight multiplicities by Freudenthal's recursion,
//!   run over dominant weights only and expanded along Weyl orbits.
//! * `tensor_decompose`: Klimyk's formula.
//! * `brauer_decompose`: peel off highest weights until the character is empty.
//! * `restrict_character`: push a character forward along a torus weight map.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::embed::WeightMap;
use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, Weight};

/// A finite weight multiset (the formal character of a module).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharacterMultiset {
    pub terms: BTreeMap<Weight, u64>,
}

impl CharacterMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn trivial(rank: usize) -> Self {
        let mut c = Self::new();
        c.add(Weight::zero(rank), 1);
        c
    }

    pub fn add(&mut self, w: Weight, m: u64) {
        if m > 0 {
            *self.terms.entry(w).or_insert(0) += m;
        }
    }

    pub fn mult(&self, w: &Weight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (w, &m) in &other.terms {
            out.add(w.clone(), m);
        }
        out
    }

    /// Pointwise (convolution) product: the character of the tensor product.
    pub fn product(&self, other: &Self) -> Self {
        let mut acc: HashMap<Weight, u64> = HashMap::new();
        for (a, &ma) in &self.terms {
            for (b, &mb) in &other.terms {
                *acc.entry(a + b).or_insert(0) += ma * mb;
            }
        }
        Self {
            terms: acc.into_iter().collect(),
        }
    }

    /// Multiplicity is constant along every simple reflection.
    pub fn is_weyl_invariant(&self, rs: &RootSystem) -> bool {
        self.terms.iter().all(|(w, &m)| {
            (0..rs.semisimple_rank()).all(|i| {
                let mut v = w.0.clone();
                rs.reflect(&mut v, i);
                self.mult(&Weight(v)) == m
            })
        })
    }

    pub fn dominant_part(&self, rs: &RootSystem) -> BTreeMap<Weight, u64> {
        self.terms
            .iter()
            .filter(|(w, _)| rs.is_dominant(w))
            .map(|(w, &m)| (w.clone(), m))
            .collect()
    }
}

/// Irreducible constituents with multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompositionResult {
    pub terms: BTreeMap<Weight, u64>,
}

impl DecompositionResult {
    pub fn mult(&self, w: &Weight) -> u64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    /// `sum mult(lambda) * dim V_lambda`.
    pub fn dimension(&self, rs: &RootSystem) -> Result<u64> {
        let mut d = 0u64;
        for (w, &m) in &self.terms {
            d += m * weyl_dim(rs, w)?;
        }
        Ok(d)
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

pub fn weyl_dim(rs: &RootSystem, lam: &[i64]) -> Result<u64> {
    rs.require_dominant(lam)?;
    let lr: Vec<i64> = lam
        .iter()
        .zip(rs.rho().iter())
        .map(|(a, b)| a + b)
        .collect();
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in 0..rs.positive_roots().len() {
        num *= rs.coroot_pairing(&lr, k);
        den *= rs.coroot_pairing(rs.rho(), k);
    }
    let (q, r) = num.div_rem(&den);
    debug_assert!(r == BigInt::from(0));
    Ok(q.to_u64().expect("dimension fits in u64"))
}

/// Dominant weights of `V_lam` (those `mu <= lam`), highest first.
fn dominant_weights_below(rs: &RootSystem, lam: &Weight) -> Vec<Weight> {
    let mut seen: std::collections::HashSet<Weight> = std::collections::HashSet::new();
    let mut stack = vec![lam.clone()];
    seen.insert(lam.clone());
    while let Some(mu) = stack.pop() {
        for a in rs.positive_roots() {
            let nu = &mu - a;
            if rs.is_dominant(&nu) && seen.insert(nu.clone()) {
                stack.push(nu);
            }
        }
    }
    let mut out: Vec<Weight> = seen.into_iter().collect();
    out.sort_by(|a, b| {
        rs.scaled_height(b)
            .cmp(&rs.scaled_height(a))
            .then_with(|| b.cmp(a))
    });
    out
}

/// Multiplicities of the dominant weights of `V_lam` via Freudenthal's formula.
pub fn freudenthal_dominant(rs: &RootSystem, lam: &Weight) -> Result<BTreeMap<Weight, u64>> {
    rs.require_dominant(lam)?;
    let order = dominant_weights_below(rs, lam);
    let mut mult: HashMap<Weight, u64> = HashMap::with_capacity(order.len());
    let rho = rs.rho();
    let lr = lam + rho;
    let top = rs.scaled_form(&lr, &lr);
    let roots = rs.positive_roots();

    let lookup = |mult: &HashMap<Weight, u64>, w: &Weight| -> u64 {
        let mut v = w.0.clone();
        rs.to_dominant(&mut v);
        mult.get(&Weight(v)).copied().unwrap_or(0)
    };

    for mu in order {
        if mu == *lam {
            mult.insert(mu, 1);
            continue;
        }
        let mut acc: i128 = 0;
        for a in roots {
            let mut shifted = &mu + a;
            loop {
                let m = lookup(&mult, &shifted);
                if m == 0 {
                    break;
                }
                acc += i128::from(rs.scaled_form(&shifted, a)) * i128::from(m);
                shifted = &shifted + a;
            }
        }
        let mr = &mu + rho;
        let denom = i128::from(top - rs.scaled_form(&mr, &mr));
        debug_assert!(denom > 0);
        let value = 2 * acc;
        debug_assert_eq!(value % denom, 0, "Freudenthal quotient not integral");
        let m = u64::try_from(value / denom).expect("nonnegative multiplicity");
        mult.insert(mu, m);
    }
    Ok(mult.into_iter().filter(|(_, m)| *m > 0).collect())
}

/// Full weight multiset of `V_lam`.
pub fn freudenthal_character(rs: &RootSystem, lam: &Weight) -> Result<CharacterMultiset> {
    let dom = freudenthal_dominant(rs, lam)?;
    let mut ch = CharacterMultiset::new();
    for (mu, m) in dom {
        for w in rs.weyl_orbit(&mu) {
            ch.add(w, m);
        }
    }
    Ok(ch)
}

/// `V_lam (x) V_mu` by Klimyk's formula.
pub fn tensor_decompose(rs: &RootSystem, lam: &Weight, mu: &Weight) -> Result<DecompositionResult> {
    rs.require_dominant(lam)?;
    rs.require_dominant(mu)?;
    let ch = freudenthal_character(rs, mu)?;
    let shift = lam + rs.rho();
    let mut acc: BTreeMap<Weight, i64> = BTreeMap::new();
    for (nu, &m) in &ch.terms {
        let mut w = (&shift + nu).0;
        let (steps, singular) = rs.to_dominant(&mut w);
        if singular {
            continue;
        }
        let target = &Weight(w) - rs.rho();
        let sign = if steps % 2 == 0 { 1 } else { -1 };
        *acc.entry(target).or_insert(0) += sign * m as i64;
    }
    let mut out = DecompositionResult::default();
    for (w, c) in acc {
        if c < 0 {
            return Err(Error::NotAModuleCharacter { weight: w.0 });
        }
        if c > 0 {
            out.terms.insert(w, c as u64);
        }
    }
    Ok(out)
}

/// Memo of dominant characters, keyed by highest weight.
#[derive(Default)]
pub struct DominantCharCache {
    map: HashMap<Weight, BTreeMap<Weight, u64>>,
}

impl DominantCharCache {
    pub fn get(&mut self, rs: &RootSystem, lam: &Weight) -> Result<&BTreeMap<Weight, u64>> {
        if !self.map.contains_key(lam) {
            let d = freudenthal_dominant(rs, lam)?;
            self.map.insert(lam.clone(), d);
        }
        Ok(&self.map[lam])
    }
}

/// Decomposes a character given by its dominant part only.
///
/// Extraction always takes the highest remaining weight: largest height
/// (root-coordinate sum), ties broken lexicographically.
pub fn brauer_decompose_dominant(
    rs: &RootSystem,
    dominant: BTreeMap<Weight, u64>,
    cache: &mut DominantCharCache,
) -> Result<DecompositionResult> {
    let mut rem: BTreeMap<(i64, Weight), i64> = dominant
        .into_iter()
        .filter(|(_, m)| *m > 0)
        .map(|(w, m)| ((rs.scaled_height(&w), w), m as i64))
        .collect();
    let mut out = DecompositionResult::default();
    while let Some(((_, top), c)) = rem.pop_last() {
        if c < 0 {
            return Err(Error::NotAModuleCharacter { weight: top.0 });
        }
        if c == 0 {
            continue;
        }
        let chi = cache.get(rs, &top)?;
        for (w, &m) in chi {
            if *w == top {
                continue;
            }
            let key = (rs.scaled_height(w), w.clone());
            let e = rem.entry(key).or_insert(0);
            *e -= c * m as i64;
            if *e < 0 {
                return Err(Error::NotAModuleCharacter {
                    weight: w.0.clone(),
                });
            }
        }
        rem.retain(|_, v| *v != 0);
        out.terms.insert(top, c as u64);
    }
    Ok(out)
}

pub fn brauer_decompose(rs: &RootSystem, ch: &CharacterMultiset) -> Result<DecompositionResult> {
    for w in ch.terms.keys() {
        rs.check_weight(w)?;
    }
    let mut cache = DominantCharCache::default();
    brauer_decompose_dominant(rs, ch.dominant_part(rs), &mut cache)
}

pub fn restrict_character(wm: &WeightMap, ch: &CharacterMultiset) -> Result<CharacterMultiset> {
    let mut out = CharacterMultiset::new();
    for (w, &m) in &ch.terms {
        out.add(wm.apply(w)?, m);
    }
    Ok(out)
}

/// Dominant part of the restriction of `V_nuhat` along `wm`, computed orbit
/// by orbit without materialising the full character.
pub fn restricted_dominant_part(
    big: &RootSystem,
    small: &RootSystem,
    wm: &WeightMap,
    nuhat: &Weight,
) -> Result<BTreeMap<Weight, u64>> {
    let dom = freudenthal_dominant(big, nuhat)?;
    let mut acc: HashMap<Weight, u64> = HashMap::new();
    for (mu, m) in dom {
        for w in big.weyl_orbit(&mu) {
            let img = wm.apply(&w)?;
            if small.is_dominant(&img) {
                *acc.entry(img).or_insert(0) += m;
            }
        }
    }
    Ok(acc.into_iter().collect())
}

/// Branching `V_nuhat |_G` into irreducibles.
pub fn branch(
    big: &RootSystem,
    small: &RootSystem,
    wm: &WeightMap,
    nuhat: &Weight,
    cache: &mut DominantCharCache,
) -> Result<DecompositionResult> {
    let dom = restricted_dominant_part(big, small, wm, nuhat)?;
    brauer_decompose_dominant(small, dom, cache)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        s.parse().unwrap()
    }

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    fn decomposition(pairs: &[(&[i64], u64)]) -> DecompositionResult {
        DecompositionResult {
            terms: pairs.iter().map(|(k, m)| (w(k), *m)).collect(),
        }
    }

    #[test]
    fn weyl_dim_examples() {
        assert_eq!(weyl_dim(&rs("A1"), &[3]).unwrap(), 4);
        assert_eq!(weyl_dim(&rs("A2"), &[1, 1]).unwrap(), 8);
        assert_eq!(weyl_dim(&rs("A2"), &[2, 0]).unwrap(), 6);
        // classical checks: B2 spin = 4, vector = 5, G-adjoint of C3 = 21
        assert_eq!(weyl_dim(&rs("B2"), &[0, 1]).unwrap(), 4);
        assert_eq!(weyl_dim(&rs("B2"), &[1, 0]).unwrap(), 5);
        assert_eq!(weyl_dim(&rs("C3"), &[2, 0, 0]).unwrap(), 21);
        assert_eq!(weyl_dim(&rs("D4"), &[0, 1, 0, 0]).unwrap(), 28);
        assert!(matches!(
            weyl_dim(&rs("A2"), &[-1, 0]),
            Err(Error::NotDominant { .. })
        ));
    }

    #[test]
    fn freudenthal_examples() {
        let a1 = rs("A1");
        let ch = freudenthal_character(&a1, &w(&[2])).unwrap();
        let expected: BTreeMap<Weight, u64> = [(w(&[2]), 1), (w(&[0]), 1), (w(&[-2]), 1)]
            .into_iter()
            .collect();
        assert_eq!(ch.terms, expected);

        let a2 = rs("A2");
        let adj = freudenthal_character(&a2, &w(&[1, 1])).unwrap();
        assert_eq!(adj.mult(&w(&[0, 0])), 2);
        assert_eq!(adj.total_dim(), 8);

        let s2 = freudenthal_character(&a2, &w(&[2, 0])).unwrap();
        assert_eq!(s2.len(), 6);
        assert!(s2.terms.values().all(|&m| m == 1));
    }

    #[test]
    fn freudenthal_rejects_non_dominant() {
        assert!(freudenthal_character(&rs("A2"), &w(&[0, -1])).is_err());
    }

    #[test]
    fn characters_are_weyl_invariant() {
        for (spec, lam) in [
            ("A2", vec![2, 1]),
            ("B2", vec![1, 1]),
            ("C3", vec![1, 0, 1]),
        ] {
            let r = rs(spec);
            let ch = freudenthal_character(&r, &Weight(lam)).unwrap();
            assert!(ch.is_weyl_invariant(&r), "{spec}");
        }
    }

    #[test]
    fn klimyk_examples() {
        let a1 = rs("A1");
        assert_eq!(
            tensor_decompose(&a1, &w(&[1]), &w(&[1])).unwrap(),
            decomposition(&[(&[2], 1), (&[0], 1)])
        );
        assert_eq!(
            tensor_decompose(&a1, &w(&[2]), &w(&[1])).unwrap(),
            decomposition(&[(&[3], 1), (&[1], 1)])
        );
        let a2 = rs("A2");
        assert_eq!(
            tensor_decompose(&a2, &w(&[1, 0]), &w(&[0, 1])).unwrap(),
            decomposition(&[(&[1, 1], 1), (&[0, 0], 1)])
        );
    }

    #[test]
    fn brauer_examples() {
        let a1 = rs("A1");
        let v2 = freudenthal_character(&a1, &w(&[2])).unwrap();
        assert_eq!(
            brauer_decompose(&a1, &v2).unwrap(),
            decomposition(&[(&[2], 1)])
        );

        let mut triv3 = CharacterMultiset::new();
        triv3.add(w(&[0]), 3);
        assert_eq!(
            brauer_decompose(&a1, &triv3).unwrap(),
            decomposition(&[(&[0], 3)])
        );

        let a2 = rs("A2");
        let sum = freudenthal_character(&a2, &w(&[1, 0]))
            .unwrap()
            .sum(&freudenthal_character(&a2, &w(&[0, 1])).unwrap());
        assert_eq!(
            brauer_decompose(&a2, &sum).unwrap(),
            decomposition(&[(&[1, 0], 1), (&[0, 1], 1)])
        );
    }

    #[test]
    fn brauer_rejects_non_module_characters() {
        let a1 = rs("A1");
        let mut bad = CharacterMultiset::new();
        bad.add(w(&[2]), 1);
        assert!(matches!(
            brauer_decompose(&a1, &bad),
            Err(Error::NotAModuleCharacter { .. })
        ));
    }

    #[test]
    fn brauer_order_handles_lex_inversions() {
        // (1,1) is lexicographically above (0,3) but lies below it.
        let a2 = rs("A2");
        let ch = freudenthal_character(&a2, &w(&[0, 3])).unwrap();
        assert_eq!(
            brauer_decompose(&a2, &ch).unwrap(),
            decomposition(&[(&[0, 3], 1)])
        );
    }

    #[test]
    fn restriction_examples() {
        let a2 = rs("A2");
        let ch = freudenthal_character(&a2, &w(&[1, 0])).unwrap();
        let id = WeightMap::identity(2);
        assert_eq!(restrict_character(&id, &ch).unwrap(), ch);

        // S^2 of the standard A1 module: the A2 fundamental weights restrict to
        // (w1 -> 2, w2 -> 2) in A1 fundamental coordinates.
        let sym2 = WeightMap::new(vec![vec![2, 2]]);
        let r = restrict_character(&sym2, &ch).unwrap();
        let expected: BTreeMap<Weight, u64> = [(w(&[2]), 1), (w(&[0]), 1), (w(&[-2]), 1)]
            .into_iter()
            .collect();
        assert_eq!(r.terms, expected);

        let zero = WeightMap::new(vec![vec![0, 0]]);
        let r = restrict_character(&zero, &ch).unwrap();
        assert_eq!(r.terms.len(), 1);
        assert_eq!(r.mult(&w(&[0])), 3);

        assert!(restrict_character(&WeightMap::identity(3), &ch).is_err());
    }
}
