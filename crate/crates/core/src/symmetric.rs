//! Group-homology computations for cyclic and symmetric groups acting on
//! tensor powers: the 2-periodic resolution, stable elements under the
//! normalizer, survivor parity conditions, coarse coinvariants, transfer
//! vanishing, and the double-coset combinatorics.

use crate::binomial::nu_sign;
use crate::error::{Error, Result};
use crate::fp::PrimeField;
use crate::matrix::{FpMatrix, Subquotient};
use crate::perm::Perm;

#[derive(Clone, Debug)]
pub struct GradedVectorSpace {
    pub field: PrimeField,
    pub basis: Vec<(String, u64)>,
}

/// V^{⊗p} with the slot-permutation action of subgroups of Σ_p,
/// Koszul signs included.
#[derive(Clone, Debug)]
pub struct TensorPowerModule {
    pub base: GradedVectorSpace,
    pub power: usize,
}

impl TensorPowerModule {
    pub fn new(base: GradedVectorSpace) -> Self {
        let power = base.field.p() as usize;
        TensorPowerModule { base, power }
    }

    pub fn dim(&self) -> usize {
        self.base.basis.len().pow(self.power as u32)
    }

    /// Factor indices of basis tensor number `idx`, slot 0 first.
    fn factors(&self, mut idx: usize) -> Vec<usize> {
        let n = self.base.basis.len();
        let mut out = vec![0; self.power];
        for slot in (0..self.power).rev() {
            out[slot] = idx % n;
            idx /= n;
        }
        out
    }

    fn index(&self, factors: &[usize]) -> usize {
        let n = self.base.basis.len();
        factors.iter().fold(0, |acc, &f| acc * n + f)
    }

    pub fn tensor_degree(&self, idx: usize) -> u64 {
        self.factors(idx)
            .iter()
            .map(|&f| self.base.basis[f].1)
            .sum()
    }

    /// Matrix of a slot permutation: factor in slot i moves to slot σ(i),
    /// with sign (−1)^{Σ |w_i||w_j|} over the inverted pairs i < j,
    /// σ(i) > σ(j).
    pub fn perm_matrix(&self, sigma: &Perm) -> FpMatrix {
        assert_eq!(sigma.n(), self.power);
        let f = self.base.field;
        let dim = self.dim();
        let mut m = FpMatrix::zero(f, dim, dim);
        for src in 0..dim {
            let w = self.factors(src);
            let mut target = vec![0; self.power];
            for (i, &wi) in w.iter().enumerate() {
                target[sigma.apply(i)] = wi;
            }
            let mut sign = 0u64;
            for i in 0..self.power {
                for j in i + 1..self.power {
                    if sigma.apply(i) > sigma.apply(j) {
                        sign += self.base.basis[w[i]].1 * self.base.basis[w[j]].1;
                    }
                }
            }
            let val = if sign % 2 == 0 { 1 } else { f.neg(1) };
            m.set(self.index(&target), src, val);
        }
        m
    }

    /// γ = (0 1 … p−1): w₁⊗…⊗w_p ↦ ±w_p⊗w₁⊗…⊗w_{p−1}.
    pub fn gamma_matrix(&self) -> FpMatrix {
        let images: Vec<usize> = (0..self.power).map(|i| (i + 1) % self.power).collect();
        self.perm_matrix(&Perm::new(images).unwrap())
    }
}

pub struct ChainComplex {
    pub dim: usize,
    /// diffs[r−1] is d_r for r = 1..
    pub diffs: Vec<FpMatrix>,
}

impl ChainComplex {
    pub fn is_complex(&self) -> bool {
        self.diffs.windows(2).all(|w| w[0].compose(&w[1]).is_zero())
    }
}

/// The 2-periodic complex with d odd = 1 − g and d even = 1 + g + … +
/// g^{q−1}, for g of order q.
pub fn periodic_resolution(g: &FpMatrix, order: u32, r_max: usize) -> ChainComplex {
    let f = pf_of(g);
    let n = g.rows();
    let id = FpMatrix::identity(f, n);
    let mut one_minus = id.clone();
    let mut norm = FpMatrix::zero(f, n, n);
    let mut g_pow = id.clone();
    for _ in 0..order {
        for r in 0..n {
            for c in 0..n {
                norm.set(r, c, f.add(norm.get(r, c), g_pow.get(r, c)));
            }
        }
        g_pow = g.compose(&g_pow);
    }
    for r in 0..n {
        for c in 0..n {
            one_minus.set(r, c, f.sub(id.get(r, c), g.get(r, c)));
        }
    }
    let diffs = (1..=r_max)
        .map(|r| {
            if r % 2 == 1 {
                one_minus.clone()
            } else {
                norm.clone()
            }
        })
        .collect();
    ChainComplex { dim: n, diffs }
}

fn pf_of(m: &FpMatrix) -> PrimeField {
    m.field()
}

pub fn cyclic_resolution_complex(m: &TensorPowerModule, r_max: usize) -> ChainComplex {
    periodic_resolution(&m.gamma_matrix(), m.power as u32, r_max)
}

fn homology_subquotients(g: &FpMatrix, order: u32, r_max: usize) -> Vec<Subquotient> {
    let f = pf_of(g);
    let n = g.rows();
    let complex = periodic_resolution(g, order, r_max + 1);
    (0..=r_max)
        .map(|r| {
            let cycles: Vec<Vec<u64>> = if r == 0 {
                (0..n)
                    .map(|i| {
                        let mut e = vec![0u64; n];
                        e[i] = 1;
                        e
                    })
                    .collect()
            } else {
                complex.diffs[r - 1].kernel_basis()
            };
            let d_next = &complex.diffs[r];
            let boundaries: Vec<Vec<u64>> = (0..n)
                .map(|i| {
                    let mut e = vec![0u64; n];
                    e[i] = 1;
                    d_next.apply(&e)
                })
                .collect();
            Subquotient::new(f, &cycles, &boundaries)
        })
        .collect()
}

/// dim H_r(C_p; V^{⊗p}) for r = 0..r_max.
pub fn homology_cp(m: &TensorPowerModule, r_max: usize) -> Vec<usize> {
    homology_subquotients(&m.gamma_matrix(), m.power as u32, r_max)
        .iter()
        .map(|sq| sq.dim())
        .collect()
}

/// dim H_r(Σ_p; V^{⊗p}) via stable elements: the subspace of
/// H_r(C_p; V^{⊗p}) fixed by every unit u, acting by the conjugating
/// slot permutation i ↦ iu mod p twisted by u^{−k} on e_{2k} and
/// u^{−(k+1)} on e_{2k+1}.
pub fn homology_sigma_p(m: &TensorPowerModule, r_max: usize) -> Vec<usize> {
    let f = m.base.field;
    let p = f.p() as u64;
    if p == 2 {
        return homology_cp(m, r_max);
    }
    let sqs = homology_subquotients(&m.gamma_matrix(), p as u32, r_max);
    let unit_perms: Vec<(u64, FpMatrix)> = (2..p)
        .map(|u| {
            let images: Vec<usize> = (0..p as usize)
                .map(|i| (i * u as usize) % p as usize)
                .collect();
            (u, m.perm_matrix(&Perm::new(images).unwrap()))
        })
        .collect();
    sqs.iter()
        .enumerate()
        .map(|(r, sq)| {
            let k = (r / 2) as i64;
            let exp = if r % 2 == 0 { -k } else { -(k + 1) };
            if sq.dim() == 0 {
                return 0;
            }
            // stack (T_u − 1) over all non-trivial units, take the kernel
            let mats: Vec<FpMatrix> = unit_perms
                .iter()
                .map(|(u, pm)| {
                    let scale = f.pow_i64(*u, exp);
                    let mut t = sq
                        .induced_matrix(|v| pm.apply(v).iter().map(|&x| f.mul(x, scale)).collect());
                    for i in 0..t.rows() {
                        let d = f.sub(t.get(i, i), 1);
                        t.set(i, i, d);
                    }
                    t
                })
                .collect();
            let d = sq.dim();
            let mut stacked = FpMatrix::zero(f, d * mats.len(), d);
            for (b, mat) in mats.iter().enumerate() {
                for i in 0..d {
                    for j in 0..d {
                        stacked.set(b * d + i, j, mat.get(i, j));
                    }
                }
            }
            d - stacked.rank()
        })
        .collect()
}

/// Closed-form survivor condition on H_r(Σ_p; (F_p x_n)^{⊗p}).
pub fn survivors(n: u64, field: PrimeField, r: u64) -> bool {
    let p = field.p() as u64;
    if p == 2 {
        return true;
    }
    let w = 2 * (p - 1);
    if n % 2 == 0 {
        // r = 2s(p−1) or r = 2(s+1)(p−1) − 1
        r % w == 0 || (r + 1) % w == 0
    } else {
        // r = (2s+1)(p−1) or r = (2s+1)(p−1) − 1
        r % w == p - 1 || (r + 1) % w == p - 1
    }
}

/// Graded dimensions of (V^{⊗p})_{Σ_{p−1}}, the subgroup permuting the
/// first p−1 slots.
pub fn coinvariants_coarse(m: &TensorPowerModule) -> Result<Vec<usize>> {
    let f = m.base.field;
    let p = m.power;
    let dim = m.dim();
    let subgroup: Vec<Perm> = Perm::all(p - 1)?
        .into_iter()
        .map(|s| {
            let mut images: Vec<usize> = s.images().to_vec();
            images.push(p - 1);
            Perm::new(images).unwrap()
        })
        .collect();
    let max_deg: u64 = (0..dim).map(|i| m.tensor_degree(i)).max().unwrap_or(0);
    let mut dims = Vec::new();
    for d in 0..=max_deg {
        let slots: Vec<usize> = (0..dim).filter(|&i| m.tensor_degree(i) == d).collect();
        let pos: std::collections::BTreeMap<usize, usize> =
            slots.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let mut rels: Vec<Vec<u64>> = Vec::new();
        for sigma in &subgroup {
            let pm = m.perm_matrix(sigma);
            for &i in &slots {
                let mut e = vec![0u64; dim];
                e[i] = 1;
                let image = pm.apply(&e);
                let mut rel = vec![0u64; slots.len()];
                for (j, &x) in image.iter().enumerate() {
                    if x != 0 {
                        rel[pos[&j]] = f.add(rel[pos[&j]], x);
                    }
                }
                rel[pos[&i]] = f.sub(rel[pos[&i]], 1);
                if rel.iter().any(|&x| x != 0) {
                    rels.push(rel);
                }
            }
        }
        let rank = if rels.is_empty() {
            0
        } else {
            FpMatrix::from_rows(f, rels).rank()
        };
        dims.push(slots.len() - rank);
    }
    Ok(dims)
}

/// H_r(Σ_{p−1}; V^{⊗p}) = 0 for 1 ≤ r ≤ r_max; only p = 2, 3 have a
/// cyclic Σ_{p−1}.
pub fn transfer_vanishing_check(v: &GradedVectorSpace, r_max: usize) -> Result<bool> {
    let p = v.field.p();
    if p == 2 {
        return Ok(true);
    }
    if p != 3 {
        return Err(Error::OddPrimeRequired(p));
    }
    let m = TensorPowerModule::new(v.clone());
    // Σ₂ generated by the swap of the first two of three slots
    let swap = m.perm_matrix(&Perm::new(vec![1, 0, 2]).unwrap());
    let dims: Vec<usize> = homology_subquotients(&swap, 2, r_max)
        .iter()
        .map(|sq| sq.dim())
        .collect();
    Ok(dims[1..].iter().all(|&d| d == 0))
}

/// Representatives of Σ_m×Σ_n \ Σ_{m+n} / Σ_{m+n−1}: the identity and
/// the transposition (m, m+n), verified against a brute-force partition.
pub fn double_cosets(m: usize, n: usize) -> Result<Vec<Perm>> {
    if m < 1 || n < 1 {
        return Err(Error::InvalidArgument("need m, n >= 1".into()));
    }
    let total = m + n;
    if total > 8 {
        return Err(Error::SizeBound(format!(
            "double cosets computed by brute force only up to m + n = 8, got {total}"
        )));
    }
    let h = young_subgroup(m, n);
    let k: Vec<Perm> = Perm::all(total)?
        .into_iter()
        .filter(|s| s.apply(total - 1) == total - 1)
        .collect();
    let id = Perm::identity(total);
    let t = Perm::transposition(total, m - 1, total - 1);
    let reps = vec![id, t];
    // partition check: the two double cosets are disjoint and exhaust Σ_{m+n}
    let mut seen = std::collections::BTreeSet::new();
    for rep in &reps {
        for a in &h {
            for b in &k {
                seen.insert(a.compose(rep).compose(b));
            }
        }
    }
    let size: usize = (1..=total).product();
    if seen.len() != size {
        return Err(Error::InvalidArgument(format!(
            "double cosets of ({m},{n}) do not partition into the expected two classes"
        )));
    }
    // and the two representatives really are in distinct double cosets
    let mut first = std::collections::BTreeSet::new();
    for a in &h {
        for b in &k {
            first.insert(a.compose(&reps[0]).compose(b));
        }
    }
    if first.contains(&reps[1]) {
        return Err(Error::InvalidArgument(format!(
            "representatives of ({m},{n}) collapse to one double coset"
        )));
    }
    Ok(reps)
}

fn young_subgroup(m: usize, n: usize) -> Vec<Perm> {
    let mut out = Vec::new();
    for a in Perm::all(m).unwrap() {
        for b in Perm::all(n).unwrap() {
            let mut images: Vec<usize> = a.images().to_vec();
            images.extend(b.images().iter().map(|&i| i + m));
            out.push(Perm::new(images).unwrap());
        }
    }
    out
}

/// Element-wise verification of
///   Σ_m×Σ_{n−1} = (Σ_m×Σ_n) ∩ Σ_{m+n−1}  and
///   Σ_{m−1}×Σ_n = (Σ_m×Σ_n) ∩ (m,m+n)Σ_{m+n−1}(m,m+n).
pub fn subgroup_identity_check(m: usize, n: usize) -> Result<bool> {
    let total = m + n;
    if total > 8 {
        return Err(Error::SizeBound(format!(
            "subgroup identities checked by brute force only up to m + n = 8, got {total}"
        )));
    }
    let h: std::collections::BTreeSet<Perm> = young_subgroup(m, n).into_iter().collect();
    let stab_last: std::collections::BTreeSet<Perm> = Perm::all(total)?
        .into_iter()
        .filter(|s| s.apply(total - 1) == total - 1)
        .collect();
    let t = Perm::transposition(total, m - 1, total - 1);
    let conj: std::collections::BTreeSet<Perm> =
        stab_last.iter().map(|s| t.compose(s).compose(&t)).collect();

    // Σ_m × Σ_{n−1}: preserve the first block, fix the last point
    let lhs1: std::collections::BTreeSet<Perm> = young_subgroup(m, n)
        .into_iter()
        .filter(|s| s.apply(total - 1) == total - 1)
        .collect();
    let rhs1: std::collections::BTreeSet<Perm> = h.intersection(&stab_last).cloned().collect();

    // Σ_{m−1} × Σ_n: preserve both blocks, fix the point m−1
    let lhs2: std::collections::BTreeSet<Perm> = young_subgroup(m, n)
        .into_iter()
        .filter(|s| s.apply(m - 1) == m - 1)
        .collect();
    let rhs2: std::collections::BTreeSet<Perm> = h.intersection(&conj).cloned().collect();

    Ok(lhs1 == rhs1 && lhs2 == rhs2)
}

/// Upper-to-lower index conversion: Q̄^r x_n = (−1)^r ν(n) Q̄_k x_n with
/// k = (2r−n)(p−1) − ε for p odd, and Q̄^r x_n = Q̄_{r−n} x_n at p = 2.
/// Returns the lower index and the unit scalar.
pub fn qbar_upper_index(n: u64, r: u64, eps: u8, field: PrimeField) -> Result<(u64, u64)> {
    let p = field.p() as u64;
    if p == 2 {
        if eps != 0 {
            return Err(Error::BadWord {
                p: 2,
                reason: "no Bockstein component at p = 2".into(),
            });
        }
        if r < n {
            return Err(Error::InvalidArgument(format!(
                "need r >= n, got r={r} n={n}"
            )));
        }
        return Ok((r - n, 1));
    }
    if 2 * r < n {
        return Err(Error::InvalidArgument(format!(
            "need 2r >= n, got r={r} n={n}"
        )));
    }
    let k = (2 * r - n) * (p - 1) - eps as u64;
    let nu = nu_sign(n as i64, field)?;
    let scalar = if r % 2 == 0 { nu } else { field.neg(nu) };
    Ok((k, scalar))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    fn module(p: u32, degs: &[u64]) -> TensorPowerModule {
        TensorPowerModule::new(GradedVectorSpace {
            field: pf(p),
            basis: degs
                .iter()
                .enumerate()
                .map(|(i, &d)| (format!("v{i}"), d))
                .collect(),
        })
    }

    #[test]
    fn trivial_module_resolution() {
        let m = module(3, &[0]);
        let c = cyclic_resolution_complex(&m, 4);
        assert!(c.diffs.iter().step_by(2).all(|d| d.is_zero())); // 1 − γ = 0
        assert!(c.is_complex());
    }

    #[test]
    fn odd_class_mod_2_resolution() {
        // sign (−1)^{1·1} = −1 ≡ 1 mod 2, so both differentials vanish
        let m = module(2, &[1]);
        let c = cyclic_resolution_complex(&m, 4);
        assert!(c.diffs.iter().all(|d| d.is_zero()));
    }

    #[test]
    fn complexes_square_to_zero() {
        for p in [2u32, 3, 5] {
            for degs in [vec![0], vec![1, 2], vec![0, 1, 2]] {
                let m = module(p, &degs);
                assert!(
                    cyclic_resolution_complex(&m, 5).is_complex(),
                    "p={p} {degs:?}"
                );
            }
        }
    }

    #[test]
    fn homology_cp_trivial_and_swap() {
        assert_eq!(homology_cp(&module(3, &[0]), 5), vec![1; 6]);
        assert_eq!(homology_cp(&module(2, &[0]), 5), vec![1; 6]);
        // two deg-0 classes at p = 2: F₂² ⊕ F₂[C₂] as a C₂-module
        assert_eq!(homology_cp(&module(2, &[0, 0]), 4), vec![3, 2, 2, 2, 2]);
    }

    #[test]
    fn sigma_p_survivor_patterns() {
        // one class of degree 0, p = 3: nonzero exactly at r ≡ 0, 3 mod 4
        let dims = homology_sigma_p(&module(3, &[0]), 8);
        let expected: Vec<usize> = (0..=8)
            .map(|r| usize::from([0, 3].contains(&(r % 4))))
            .collect();
        assert_eq!(dims, expected);
        // one class of degree 1, p = 3: nonzero exactly at r ≡ 1, 2 mod 4
        let dims = homology_sigma_p(&module(3, &[1]), 8);
        let expected: Vec<usize> = (0..=8)
            .map(|r| usize::from([1, 2].contains(&(r % 4))))
            .collect();
        assert_eq!(dims, expected);
        // p = 2 reduces to C₂
        assert_eq!(
            homology_sigma_p(&module(2, &[0]), 5),
            homology_cp(&module(2, &[0]), 5)
        );
    }

    #[test]
    fn sigma_p_bounded_by_cp() {
        for degs in [vec![0], vec![1], vec![0, 1]] {
            let m = module(3, &degs);
            let s = homology_sigma_p(&m, 6);
            let c = homology_cp(&m, 6);
            assert!(s.iter().zip(&c).all(|(a, b)| a <= b), "{degs:?}");
        }
    }

    #[test]
    fn survivors_closed_form() {
        let f3 = pf(3);
        assert!(survivors(0, f3, 4));
        assert!(!survivors(0, f3, 2));
        assert!(survivors(1, f3, 1));
        assert!((0..10).all(|r| survivors(5, pf(2), r)));
    }

    #[test]
    fn survivors_match_stable_elements() {
        for p in [3u32, 5] {
            let f = pf(p);
            let r_max = (2 * 2 * (p as usize - 1)) + 3;
            for n in 0..=3u64 {
                let dims = homology_sigma_p(&module(p, &[n]), r_max);
                for (r, &d) in dims.iter().enumerate() {
                    assert_eq!(
                        d > 0,
                        survivors(n, f, r as u64),
                        "p={p} n={n} r={r} dim={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn coarse_coinvariants() {
        assert_eq!(coinvariants_coarse(&module(3, &[0])).unwrap(), vec![1]);
        assert_eq!(coinvariants_coarse(&module(2, &[0, 0])).unwrap(), vec![4]);
        let dims = coinvariants_coarse(&module(3, &[0, 0])).unwrap();
        assert_eq!(dims.iter().sum::<usize>(), 6);
    }

    #[test]
    fn transfer_vanishing() {
        assert!(transfer_vanishing_check(
            &GradedVectorSpace {
                field: pf(2),
                basis: vec![("a".into(), 0)]
            },
            6
        )
        .unwrap());
        assert!(transfer_vanishing_check(
            &GradedVectorSpace {
                field: pf(3),
                basis: vec![("a".into(), 0)]
            },
            6
        )
        .unwrap());
        assert!(transfer_vanishing_check(
            &GradedVectorSpace {
                field: pf(3),
                basis: vec![("a".into(), 0), ("b".into(), 1)]
            },
            6
        )
        .unwrap());
        assert!(transfer_vanishing_check(
            &GradedVectorSpace {
                field: pf(5),
                basis: vec![("a".into(), 0)]
            },
            4
        )
        .is_err());
    }

    #[test]
    fn double_coset_reps() {
        let reps = double_cosets(1, 1).unwrap();
        assert_eq!(reps[0], Perm::identity(2));
        assert_eq!(reps[1], Perm::transposition(2, 0, 1));
        let reps = double_cosets(2, 1).unwrap();
        assert_eq!(reps[1], Perm::transposition(3, 1, 2));
        let reps = double_cosets(2, 2).unwrap();
        assert_eq!(reps[1], Perm::transposition(4, 1, 3));
        assert!(double_cosets(5, 4).is_err());
    }

    #[test]
    fn subgroup_identities() {
        for (m, n) in [(1, 1), (2, 2), (3, 2), (2, 3), (4, 2)] {
            assert!(subgroup_identity_check(m, n).unwrap(), "({m},{n})");
        }
    }

    #[test]
    fn upper_index_conversion() {
        let f3 = pf(3);
        assert_eq!(qbar_upper_index(2, 2, 0, f3).unwrap(), (4, 2));
        assert_eq!(qbar_upper_index(2, 2, 1, f3).unwrap(), (3, 2));
        assert_eq!(qbar_upper_index(1, 3, 0, pf(2)).unwrap(), (2, 1));
        assert!(qbar_upper_index(5, 1, 0, f3).is_err());
    }

    #[test]
    fn ord_p_subgroup_identities() {
        use crate::binomial::ord_p_factorial;
        for p in [2u64, 3, 5] {
            let f = pf(p as u32);
            for m in 1..=4u32 {
                let pm = p.pow(m);
                let pm1 = p.pow(m - 1);
                let full = ord_p_factorial(pm, f);
                let geom: u64 = (0..m).map(|k| p.pow(k)).sum();
                assert_eq!(full, geom, "p={p} m={m}");
                // wreath Σ_p ≀ Σ_{p^{m−1}} has the same p-order
                let wreath = ord_p_factorial(p, f) + p * ord_p_factorial(pm1, f);
                assert_eq!(wreath, full);
                // Σ_{p^m −1} against Σ_{p^{m−1}}^{p−1} × Σ_{p^{m−1}−1}
                let left = ord_p_factorial(pm - 1, f);
                assert_eq!(left, geom - m as u64);
                let right = (p - 1) * ord_p_factorial(pm1, f) + ord_p_factorial(pm1 - 1, f);
                assert_eq!(left, right, "p={p} m={m}");
            }
        }
    }
}
