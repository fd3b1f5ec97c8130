//! Dyer-Lashof indexing words I = (ε₁,i₁,…,ε_ℓ,i_ℓ).
//!
//! Words act right-to-left: i_ℓ applies first. The generator predicate is
//! the strict-excess condition; excess equality is a p-th power and is
//! excluded.

use crate::error::{Error, Result};
use crate::fp::PrimeField;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DLIndex {
    entries: Vec<(u8, u64)>,
}

impl DLIndex {
    pub fn empty() -> Self {
        DLIndex::default()
    }

    pub fn new(entries: Vec<(u8, u64)>, field: PrimeField) -> Result<Self> {
        for &(eps, i) in &entries {
            if eps > 1 {
                return Err(Error::BadWord {
                    p: field.p(),
                    reason: format!("epsilon must be 0 or 1, got {eps}"),
                });
            }
            if i == 0 {
                return Err(Error::BadWord {
                    p: field.p(),
                    reason: "lower index must be >= 1".into(),
                });
            }
            if field.p() == 2 && eps != 0 {
                return Err(Error::BadWord {
                    p: 2,
                    reason: "no Bockstein component at p = 2".into(),
                });
            }
        }
        Ok(DLIndex { entries })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[(u8, u64)] {
        &self.entries
    }

    /// Word with the leading (ε₁,i₁) removed.
    pub fn tail(&self) -> DLIndex {
        DLIndex {
            entries: self.entries[1..].to_vec(),
        }
    }

    /// Prepend an operation on the left (it applies last).
    pub fn prepend(&self, eps: u8, i: u64) -> DLIndex {
        let mut entries = Vec::with_capacity(self.entries.len() + 1);
        entries.push((eps, i));
        entries.extend_from_slice(&self.entries);
        DLIndex { entries }
    }

    /// Total degree added by the word: Σ (2 i_j (p−1) − ε_j) for p odd,
    /// Σ i_j for p = 2.
    pub fn degree_shift(&self, field: PrimeField) -> u64 {
        let p = field.p() as u64;
        self.entries
            .iter()
            .map(|&(eps, i)| {
                if p == 2 {
                    i
                } else {
                    2 * i * (p - 1) - eps as u64
                }
            })
            .sum()
    }

    /// Admissibility: i_j ≤ p·i_{j+1} − ε_{j+1} for all adjacent pairs.
    pub fn is_admissible(&self, field: PrimeField) -> bool {
        let p = field.p() as u64;
        self.entries.windows(2).all(|w| {
            let (_, i) = w[0];
            let (eps_next, i_next) = w[1];
            i <= p * i_next - eps_next as u64
        })
    }

    /// Strict-excess generator predicate over a class of degree `n`.
    pub fn is_generator(&self, n: u64, field: PrimeField) -> Result<bool> {
        if !self.is_admissible(field) {
            return Err(Error::NonAdmissible);
        }
        if self.is_empty() {
            return Ok(true);
        }
        let tail = self.tail();
        if !tail.is_generator(n, field)? {
            return Ok(false);
        }
        let (eps, i) = self.entries[0];
        let m = n + tail.degree_shift(field);
        Ok(if field.p() == 2 {
            i > m
        } else {
            2 * i - eps as u64 > m
        })
    }

    /// The leading operation is exactly at excess equality on a target of
    /// degree `m` (so applying it yields a p-th power rather than a new
    /// generator).
    pub fn leading_is_pth_power(eps: u8, i: u64, m: u64, field: PrimeField) -> bool {
        if field.p() == 2 {
            i == m
        } else {
            eps == 0 && 2 * i == m
        }
    }
}

/// All admissible generator words over a degree-`n` class, with total
/// degree n + degree_shift(I) ≤ `max_total_degree`. The empty word is
/// always present. Sorted by (total degree, length, entries).
pub fn enumerate_generators(
    n: u64,
    field: PrimeField,
    max_total_degree: u64,
) -> Result<Vec<DLIndex>> {
    if max_total_degree < n {
        return Err(Error::InvalidArgument(format!(
            "max_total_degree {max_total_degree} below base degree {n}"
        )));
    }
    let mut out = Vec::new();
    // Extend generator words on the left; every tail of a generator word
    // is a generator word, so this search is complete.
    let mut frontier = vec![DLIndex::empty()];
    while let Some(word) = frontier.pop() {
        let budget = max_total_degree - n - word.degree_shift(field);
        let p = field.p() as u64;
        let max_i = if p == 2 {
            budget
        } else {
            budget.div_ceil(2 * (p - 1))
        };
        for i in 1..=max_i {
            for eps in 0..=(if p == 2 { 0 } else { 1u8 }) {
                let ext = word.prepend(eps, i);
                if n + ext.degree_shift(field) > max_total_degree {
                    continue;
                }
                if ext.is_admissible(field) && ext.is_generator(n, field)? {
                    frontier.push(ext);
                }
            }
        }
        out.push(word);
    }
    out.sort_by_key(|w| (n + w.degree_shift(field), w.len(), w.entries.clone()));
    out.dedup();
    Ok(out)
}

// JSON form: the flat list [ε₁, i₁, …, ε_ℓ, i_ℓ].
impl Serialize for DLIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let flat: Vec<u64> = self
            .entries
            .iter()
            .flat_map(|&(eps, i)| [eps as u64, i])
            .collect();
        flat.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DLIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let flat = Vec::<u64>::deserialize(d)?;
        if flat.len() % 2 != 0 {
            return Err(D::Error::custom("flat word list must have even length"));
        }
        let entries = flat
            .chunks(2)
            .map(|c| {
                if c[0] > 1 {
                    return Err(D::Error::custom("epsilon must be 0 or 1"));
                }
                if c[1] == 0 {
                    return Err(D::Error::custom("lower index must be >= 1"));
                }
                Ok((c[0] as u8, c[1]))
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(DLIndex { entries })
    }
}

impl std::fmt::Display for DLIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for (k, &(eps, i)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{eps},{i}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn word(entries: &[(u8, u64)], p: u32) -> DLIndex {
        DLIndex::new(entries.to_vec(), pf(p)).unwrap()
    }

    #[test]
    fn degree_shifts() {
        assert_eq!(word(&[(0, 2)], 3).degree_shift(pf(3)), 8);
        assert_eq!(DLIndex::empty().degree_shift(pf(5)), 0);
        assert_eq!(word(&[(0, 3)], 2).degree_shift(pf(2)), 3);
        assert_eq!(word(&[(1, 2)], 3).degree_shift(pf(3)), 7);
    }

    #[test]
    fn admissibility() {
        assert!(word(&[(0, 4), (0, 4)], 2).is_admissible(pf(2)));
        assert!(!word(&[(0, 5), (0, 2)], 2).is_admissible(pf(2)));
        assert!(DLIndex::empty().is_admissible(pf(3)));
    }

    #[test]
    fn generator_predicate() {
        assert!(word(&[(0, 2)], 2).is_generator(1, pf(2)).unwrap());
        assert!(!word(&[(0, 1)], 2).is_generator(1, pf(2)).unwrap());
        assert!(word(&[(0, 2)], 3).is_generator(2, pf(3)).unwrap());
        assert!(word(&[(0, 5), (0, 2)], 2).is_generator(1, pf(2)).is_err());
    }

    #[test]
    fn enumeration_small() {
        let g = enumerate_generators(1, pf(2), 4).unwrap();
        assert_eq!(
            g,
            vec![DLIndex::empty(), word(&[(0, 2)], 2), word(&[(0, 3)], 2)]
        );
        assert_eq!(
            enumerate_generators(0, pf(2), 0).unwrap(),
            vec![DLIndex::empty()]
        );
        let g3 = enumerate_generators(2, pf(3), 10).unwrap();
        assert_eq!(
            g3,
            vec![DLIndex::empty(), word(&[(1, 2)], 3), word(&[(0, 2)], 3)]
        );
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for p in [2u32, 3] {
            let f = pf(p);
            for n in 0..=3u64 {
                let bound = 25;
                let fast = enumerate_generators(n, f, bound).unwrap();
                let mut brute = vec![DLIndex::empty()];
                // all words of length <= 4; length 5 already exceeds degree 25
                let mut layer = vec![DLIndex::empty()];
                for _ in 0..4 {
                    let mut next = Vec::new();
                    for w in &layer {
                        for i in 1..=bound {
                            for eps in 0..=(if p == 2 { 0 } else { 1u8 }) {
                                if p == 2 && eps == 1 {
                                    continue;
                                }
                                let ext = w.prepend(eps, i);
                                if n + ext.degree_shift(f) <= bound
                                    && ext.is_admissible(f)
                                    && ext.is_generator(n, f).unwrap()
                                {
                                    next.push(ext);
                                }
                            }
                        }
                    }
                    brute.extend(next.iter().cloned());
                    layer = next;
                }
                // longer words would exceed the degree budget at these sizes
                brute.sort_by_key(|w| (n + w.degree_shift(f), w.len(), w.entries().to_vec()));
                brute.dedup();
                assert_eq!(fast, brute, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn no_generators_in_gap() {
        // p = 2: nothing between degree n and 2n+1 over a degree-n class.
        let f = pf(2);
        for n in 1..=6u64 {
            let g = enumerate_generators(n, f, 2 * n).unwrap();
            assert_eq!(g, vec![DLIndex::empty()], "n={n}");
        }
    }

    #[test]
    fn json_roundtrip_flat() {
        let w = word(&[(1, 3), (0, 2)], 3);
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(s, "[1,3,0,2]");
        let back: DLIndex = serde_json::from_str(&s).unwrap();
        assert_eq!(back, w);
        assert!(serde_json::from_str::<DLIndex>("[1,2,3]").is_err());
    }

    #[test]
    fn shift_additive_under_concat() {
        let f = pf(3);
        let a = word(&[(0, 3)], 3);
        let b = word(&[(1, 2), (0, 1)], 3);
        let mut cat = a.entries().to_vec();
        cat.extend_from_slice(b.entries());
        let c = DLIndex::new(cat, f).unwrap();
        assert_eq!(c.degree_shift(f), a.degree_shift(f) + b.degree_shift(f));
    }
}
