//! The named spectra as data: Dyer-Lashof action on H_*(MU) and H_*(MO),
//! DL-indecomposables, the θ′ tables for MU, MSU, MO and HF_p, the
//! ko⟨1⟩ module maps, and the two obstruction calculations.

use std::collections::BTreeMap;

use crate::algebra::{AlgebraElement, GeneratorSymbol, GradedAlgebra, Monomial};
use crate::binomial::{binom_mod_p, multinom_mod_p};
use crate::error::{Error, Result};
use crate::fp::{Field, PrimeField};
use crate::matrix::FpMatrix;

/// Generator families of the dual Steenrod algebra and its relatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Fam {
    Zeta,
    Xi,
    Tau,
    TauBar,
}

impl Fam {
    pub fn ascii(self) -> &'static str {
        match self {
            Fam::Xi => "xi",
            Fam::Zeta => "z",
            Fam::Tau => "t",
            Fam::TauBar => "tb",
        }
    }

    pub fn unicode(self) -> &'static str {
        match self {
            Fam::Xi => "ξ",
            Fam::Zeta => "ζ",
            Fam::Tau => "τ",
            Fam::TauBar => "τ̄",
        }
    }
}

/// A monomial in the ξ/ζ/τ families; ξ₀ = 1 is never stored.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct SMono {
    factors: BTreeMap<(Fam, u32), u64>,
}

impl SMono {
    pub fn one() -> Self {
        SMono::default()
    }

    pub fn from_pairs(pairs: &[(Fam, u32, u64)]) -> Self {
        let mut factors = BTreeMap::new();
        for &(f, i, e) in pairs {
            if e == 0 || (f == Fam::Xi && i == 0) {
                continue;
            }
            *factors.entry((f, i)).or_insert(0) += e;
        }
        SMono { factors }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factors(&self) -> impl Iterator<Item = (&(Fam, u32), &u64)> {
        self.factors.iter()
    }

    fn render(&self, unicode: bool) -> String {
        if self.factors.is_empty() {
            return "1".into();
        }
        self.factors
            .iter()
            .map(|(&(f, i), &e)| {
                let name = if unicode { f.unicode() } else { f.ascii() };
                if e == 1 {
                    format!("{name}{i}")
                } else {
                    format!("{name}{i}^{e}")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A suspension-shifted F_p-linear combination of `SMono`s.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SElement {
    pub shift: i64,
    terms: BTreeMap<SMono, u64>,
}

impl SElement {
    pub fn zero(shift: i64) -> Self {
        SElement {
            shift,
            terms: BTreeMap::new(),
        }
    }

    pub fn single(shift: i64, mono: SMono, coeff: u64) -> Self {
        let mut out = SElement::zero(shift);
        if coeff != 0 {
            out.terms.insert(mono, coeff);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SMono, &u64)> {
        self.terms.iter()
    }

    pub fn render(&self, unicode: bool) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let shift = match self.shift {
            0 => String::new(),
            s if unicode => format!("Σ^{s} "),
            s => format!("S^{s} "),
        };
        self.terms
            .iter()
            .map(|(m, &c)| {
                let body = m.render(unicode);
                if c == 1 {
                    format!("{shift}{body}")
                } else {
                    format!("{shift}{c} {body}")
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// The image of one MU (or MO) Dyer-Lashof application modulo
/// decomposables: a scalar multiple of a single b-generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MuImage {
    pub coeff: u64,
    pub index: u64,
}

impl MuImage {
    pub fn is_zero(&self) -> bool {
        self.coeff == 0
    }
}

/// Q^s b_n mod decomposables. At p = 2 the operation index must be even
/// (2r), giving (n, r−n−1) b_{n+r}; for odd p, Q^r b_n gives
/// (−1)^{r+n+1}(n, r−n−1) b_{n+r(p−1)}.
pub fn mu_dl_action(op: u64, n: u64, field: PrimeField) -> Result<MuImage> {
    if op == 0 || n == 0 {
        return Err(Error::InvalidArgument(
            "need operation and index >= 1".into(),
        ));
    }
    let p = field.p() as u64;
    if p == 2 {
        if op % 2 != 0 {
            return Err(Error::InvalidArgument(
                "odd operation indices vanish mod decomposables on H_*(MU; F_2)".into(),
            ));
        }
        let r = op / 2;
        let coeff = binom_mod_p(n as i64, r as i64 - n as i64 - 1, field);
        Ok(MuImage {
            coeff,
            index: n + r,
        })
    } else {
        let r = op;
        let mut coeff = binom_mod_p(n as i64, r as i64 - n as i64 - 1, field);
        if (r + n + 1) % 2 == 1 {
            coeff = field.neg(coeff);
        }
        Ok(MuImage {
            coeff,
            index: n + r * (p - 1),
        })
    }
}

/// Same action convention for H_*(MO; F_2): Q^r a_n ≈ (n, r−n−1) a_{n+r}.
pub fn mo_dl_action(r: u64, n: u64) -> MuImage {
    let f2 = PrimeField::new(2).unwrap();
    MuImage {
        coeff: binom_mod_p(n as i64, r as i64 - n as i64 - 1, f2),
        index: n + r,
    }
}

/// DL-indecomposable b-indices up to `max_index`, by exact linear
/// algebra: quotient of the span of the b_k by the span of all
/// positive-operation images.
pub fn mu_dl_indecomposables(field: PrimeField, max_index: u64) -> Result<Vec<u64>> {
    let p = field.p() as u64;
    let step = if p == 2 { 1 } else { p - 1 };
    let cols = max_index as usize;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for n in 1..=max_index {
        let mut r = 1u64;
        while n + r * step <= max_index {
            let op = if p == 2 { 2 * r } else { r };
            let image = mu_dl_action(op, n, field)?;
            if !image.is_zero() && seen.insert((image.index, image.coeff)) {
                let mut row = vec![0u64; cols];
                row[image.index as usize - 1] = image.coeff;
                rows.push(row);
            }
            r += 1;
        }
    }
    let hit: std::collections::BTreeSet<usize> = if rows.is_empty() {
        Default::default()
    } else {
        FpMatrix::from_rows(field, rows)
            .rref()
            .1
            .into_iter()
            .collect()
    };
    Ok((1..=max_index)
        .filter(|&k| !hit.contains(&(k as usize - 1)))
        .collect())
}

/// The closed-form indecomposable list: b_{2^t} at p = 2; for odd p the
/// b_{np^t} with p ∤ n, n = m(p−1) + r for some 1 ≤ r ≤ p−1, where m = 0
/// or the p-adic digits of m are non-increasing, all ≥ 1, and bounded by r.
pub fn mu_indecomposables_closed(field: PrimeField, max_index: u64) -> Vec<u64> {
    let p = field.p() as u64;
    (1..=max_index)
        .filter(|&k| {
            if p == 2 {
                return k.is_power_of_two();
            }
            let mut n = k;
            while n % p == 0 {
                n /= p;
            }
            let r = match n % (p - 1) {
                0 => p - 1,
                r => r,
            };
            let m = (n - r) / (p - 1);
            if m == 0 {
                return true;
            }
            let mut digits = Vec::new();
            let mut x = m;
            while x > 0 {
                digits.push(x % p);
                x /= p;
            }
            // s₀ ≥ s₁ ≥ … ≥ s_k ≥ 1 and s₀ ≤ r
            digits.windows(2).all(|w| w[0] >= w[1])
                && *digits.last().unwrap() >= 1
                && digits[0] <= r
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DecompWitness {
    pub source_index: u64,
    pub op_index: u64,
    pub coeff: u64,
}

/// The Prop-B.3 decomposability witness for b_n: the bottom p-adic digit
/// block of n hits b_n under a single operation with nonzero coefficient.
pub fn dl_decomp_witness(n: u64, field: PrimeField) -> Result<DecompWitness> {
    let p = field.p() as u64;
    let mut digits = Vec::new();
    let mut x = n;
    while x > 0 {
        digits.push(x % p);
        x /= p;
    }
    let nonzero = digits.iter().filter(|&&d| d != 0).count();
    if nonzero < 2 {
        return Err(Error::InvalidArgument(format!(
            "{n} has a single p-adic digit at p = {p}; b_{n} has no decomposability witness"
        )));
    }
    let s = digits.iter().position(|&d| d != 0).unwrap();
    let low = digits[s] * p.pow(s as u32);
    let (op_index, top, bottom) = if p == 2 {
        (2 * n - 2 * low, n - low - 1, low)
    } else {
        (n - low, n - low - 1, low)
    };
    // C(top, bottom) in the (a, b) pairing used by binom_mod_p
    let coeff = binom_mod_p(bottom as i64, top as i64 - bottom as i64, field);
    Ok(DecompWitness {
        source_index: low,
        op_index,
        coeff,
    })
}

/// θ′ on H_*(MU): at p = 2 the Σ²ku table; at odd p the image in the
/// Adams summand Σ^{2r}ℓ with r ≡ k mod (p−1).
pub struct ThetaPrimeMu {
    /// Adams summand index r (p odd); 1 at p = 2.
    pub summand: u64,
    pub image: SElement,
}

pub fn theta_prime_mu(k: u64, field: PrimeField) -> Result<ThetaPrimeMu> {
    if k == 0 {
        return Err(Error::InvalidArgument("need k >= 1".into()));
    }
    let p = field.p() as u64;
    if p == 2 {
        let image = if k.is_power_of_two() {
            let s = k.trailing_zeros();
            SElement::single(2, SMono::from_pairs(&[(Fam::Xi, s, 2)]), 1)
        } else {
            SElement::zero(2)
        };
        return Ok(ThetaPrimeMu { summand: 1, image });
    }
    let series = theta_prime_mu_series(k, field)?;
    let closed = theta_prime_mu_closed(k, field)?;
    if series.image != closed.image {
        return Err(Error::InvalidArgument(format!(
            "theta' series and closed form disagree at k = {k}, p = {p}"
        )));
    }
    Ok(series)
}

/// Coefficient of t^k in t^r (Σ_{j≥0} ξ_j t^{p^j−1})^r, expanded as a sum
/// over multisets of series indices.
pub fn theta_prime_mu_series(k: u64, field: PrimeField) -> Result<ThetaPrimeMu> {
    let p = field.p() as u64;
    if p == 2 {
        return Err(Error::OddPrimeRequired(2));
    }
    let r = match k % (p - 1) {
        0 => p - 1,
        r => r,
    };
    let target = k - r;
    let mut image = SElement::zero(2 * r as i64);
    // multisets j₁ ≤ … ≤ j_r with Σ (p^{j_i} − 1) = k − r
    let mut choice = Vec::new();
    collect_multisets(p, r as usize, 0, target, &mut choice, &mut |js| {
        let mut mults: BTreeMap<u32, i64> = BTreeMap::new();
        for &j in js {
            *mults.entry(j).or_insert(0) += 1;
        }
        let parts: Vec<i64> = mults.values().copied().collect();
        let coeff = multinom_mod_p(&parts, field);
        if coeff != 0 {
            let pairs: Vec<(Fam, u32, u64)> = mults
                .iter()
                .map(|(&j, &m)| (Fam::Xi, j, m as u64))
                .collect();
            add_term(&mut image, SMono::from_pairs(&pairs), coeff, field);
        }
    });
    Ok(ThetaPrimeMu { summand: r, image })
}

fn collect_multisets(
    p: u64,
    slots: usize,
    min_j: u32,
    remaining: u64,
    choice: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if slots == 0 {
        if remaining == 0 {
            emit(choice);
        }
        return;
    }
    let mut j = min_j;
    loop {
        let w = p.pow(j) - 1;
        if w > remaining {
            break;
        }
        choice.push(j);
        collect_multisets(p, slots - 1, j, remaining - w, choice, emit);
        choice.pop();
        j += 1;
    }
}

fn add_term(el: &mut SElement, mono: SMono, coeff: u64, field: PrimeField) {
    let entry = el.terms.entry(mono).or_insert(0);
    *entry = field.add(*entry, coeff);
    if *entry == 0 {
        let key = el
            .terms
            .iter()
            .find(|(_, &c)| c == 0)
            .map(|(m, _)| m.clone());
        if let Some(k) = key {
            el.terms.remove(&k);
        }
    }
}

/// The closed multinomial formula: k = np^e with p ∤ n, n − r =
/// (p−1)(s₀ + s₁p + … + s_d p^d), image multinom(r; r−s₀, …, s_d) ·
/// ξ_e^{r−s₀} ξ_{e+1}^{s₀−s₁} ⋯ ξ_{e+d+1}^{s_d}.
pub fn theta_prime_mu_closed(k: u64, field: PrimeField) -> Result<ThetaPrimeMu> {
    let p = field.p() as u64;
    if p == 2 {
        return Err(Error::OddPrimeRequired(2));
    }
    let r = match k % (p - 1) {
        0 => p - 1,
        r => r,
    };
    let mut n = k;
    let mut e = 0u32;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    let shift = 2 * r as i64;
    let s = (n - r) / (p - 1);
    if s == 0 {
        return Ok(ThetaPrimeMu {
            summand: r,
            image: SElement::single(shift, SMono::from_pairs(&[(Fam::Xi, e, r)]), 1),
        });
    }
    let mut digits = Vec::new();
    let mut x = s;
    while x > 0 {
        digits.push(x % p);
        x /= p;
    }
    // exponent ladder: r−s₀, s₀−s₁, …, s_{d−1}−s_d, s_d
    let mut parts: Vec<i64> = vec![r as i64 - digits[0] as i64];
    for w in digits.windows(2) {
        parts.push(w[0] as i64 - w[1] as i64);
    }
    parts.push(*digits.last().unwrap() as i64);
    if parts.iter().any(|&x| x < 0) {
        return Ok(ThetaPrimeMu {
            summand: r,
            image: SElement::zero(shift),
        });
    }
    let coeff = multinom_mod_p(&parts, field);
    let pairs: Vec<(Fam, u32, u64)> = parts
        .iter()
        .enumerate()
        .map(|(i, &exp)| (Fam::Xi, e + i as u32, exp as u64))
        .collect();
    Ok(ThetaPrimeMu {
        summand: r,
        image: SElement::single(shift, SMono::from_pairs(&pairs), coeff),
    })
}

/// Whether degree `d` carries a DL-indecomposable MSU generator
/// (degrees 2(2^m + 2^n), m, n ≥ 0).
pub fn msu_indecomposable_degree(d: u64) -> bool {
    d % 2 == 0 && {
        let half = d / 2;
        half.count_ones() <= 2 && half >= 2
    }
}

/// θ′ on the degree-`d` MSU generator a′_{d/2}: Σ⁴ξ_s⁴ when d/2 = 2^{s+1},
/// Σ⁴ξ_m²ξ_n² when d/2 = 2^m + 2^n with n > m, otherwise 0.
pub fn theta_prime_msu(d: u64) -> Result<SElement> {
    if d < 4 || d % 2 != 0 {
        return Err(Error::InvalidArgument(format!(
            "MSU generators live in even degrees >= 4, got {d}"
        )));
    }
    let half = d / 2;
    let image = match half.count_ones() {
        1 => {
            let s = half.trailing_zeros() - 1;
            SElement::single(4, SMono::from_pairs(&[(Fam::Xi, s, 4)]), 1)
        }
        2 => {
            let m = half.trailing_zeros();
            let n = 63 - half.leading_zeros();
            SElement::single(4, SMono::from_pairs(&[(Fam::Xi, m, 2), (Fam::Xi, n, 2)]), 1)
        }
        _ => SElement::zero(4),
    };
    Ok(image)
}

/// θ′ on the MO generator a_n (n not of the form 2^s − 1).
pub fn theta_mo(n: u64) -> Result<SElement> {
    if n == 0 || (n + 1).is_power_of_two() {
        return Err(Error::InvalidArgument(format!(
            "pi_*(MO) has no generator indexed {n}"
        )));
    }
    let image = if !n.is_power_of_two() {
        SElement::zero(-1)
    } else {
        match n {
            2 => SElement::single(-1, SMono::from_pairs(&[(Fam::Zeta, 2, 1)]), 1),
            4 => SElement::single(
                -1,
                SMono::from_pairs(&[(Fam::Zeta, 1, 2), (Fam::Zeta, 2, 1)]),
                1,
            ),
            _ => {
                let s = n.trailing_zeros();
                SElement::single(
                    -1,
                    SMono::from_pairs(&[(Fam::Zeta, 1, 2), (Fam::Xi, s, 1)]),
                    1,
                )
            }
        }
    };
    Ok(image)
}

/// Ambient polynomial algebra F₂[ζ₁, …, ζ_j] (|ζ_i| = 2^i − 1) holding
/// both A(2)_* images and H_*(ko) below the truncation degree.
pub fn zeta_algebra(d_max: u64) -> GradedAlgebra {
    let mut gens = Vec::new();
    let mut i = 1u32;
    while (1u64 << i) - 1 <= d_max.max(1) {
        gens.push(GeneratorSymbol {
            name: format!("z{i}"),
            degree: (1u64 << i) - 1,
        });
        i += 1;
    }
    GradedAlgebra::new(Field::prime(2).unwrap(), gens).unwrap()
}

/// Basis of H_*(ko; F₂) = F₂[ζ₁⁴, ζ₂², ζ₃, ζ₄, …] in degree `d`,
/// expanded in the ambient ζ-algebra.
pub fn ko_basis(amb: &GradedAlgebra, d: u64) -> Result<Vec<AlgebraElement>> {
    // generators (ambient index, ambient exponent per unit)
    let mut gens: Vec<(usize, u64, u64)> = Vec::new(); // (amb idx, exp step, degree)
    if let Ok(i) = amb.gen_index("z1") {
        gens.push((i, 4, 4));
    }
    if let Ok(i) = amb.gen_index("z2") {
        gens.push((i, 2, 6));
    }
    let mut s = 3u32;
    while let Ok(i) = amb.gen_index(&format!("z{s}")) {
        gens.push((i, 1, (1u64 << s) - 1));
        s += 1;
    }
    let mut out = Vec::new();
    let mut stack = Vec::new();
    fn rec(
        amb: &GradedAlgebra,
        gens: &[(usize, u64, u64)],
        pos: usize,
        remaining: u64,
        stack: &mut Vec<(usize, u64)>,
        out: &mut Vec<AlgebraElement>,
    ) {
        if pos == gens.len() {
            if remaining == 0 {
                out.push(amb.monomial(Monomial::from_entries(stack.clone())));
            }
            return;
        }
        let (idx, step, deg) = gens[pos];
        let max_e = remaining / deg;
        for e in 0..=max_e {
            if e > 0 {
                stack.push((idx, step * e));
            }
            rec(amb, gens, pos + 1, remaining - deg * e, stack, out);
            if e > 0 {
                stack.pop();
            }
        }
    }
    rec(amb, &gens, 0, d, &mut stack, &mut out);
    Ok(out)
}

/// The three H_*(ko)-module generators of H_*(ko⟨1⟩), with degrees.
pub const KO1_GENERATORS: [(&str, u64); 3] =
    [("S^-1 z1^2", 1), ("S^-1 z2", 2), ("S^-1 z1^2 z2", 4)];

/// ψ_*: w·Σ⁻¹ζ₁² ↦ w, w·Σ⁻¹ζ₂ ↦ wξ₁ = wζ₁, w·Σ⁻¹ζ₁²ζ₂ ↦ wξ₂ = w(ζ₂+ζ₁³).
pub fn psi_star(
    amb: &GradedAlgebra,
    w: &AlgebraElement,
    generator: &str,
) -> Result<AlgebraElement> {
    let z1 = amb.generator("z1")?;
    match generator {
        "S^-1 z1^2" => Ok(w.clone()),
        "S^-1 z2" => amb.multiply(w, &z1),
        "S^-1 z1^2 z2" => {
            let z2 = amb.generator("z2")?;
            let xi2 = amb.add(&z2, &amb.pow(&z1, 3)?)?;
            amb.multiply(w, &xi2)
        }
        other => Err(Error::UnknownGenerator(other.to_string())),
    }
}

/// Element of H_*(ko⟨1⟩) as a free H_*(ko)-module on the three
/// generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ko1Element {
    pub components: BTreeMap<&'static str, AlgebraElement>,
}

/// η̃_*: w ↦ w·Σ⁻¹ζ₁².
pub fn eta_tilde_star(w: &AlgebraElement) -> Ko1Element {
    Ko1Element {
        components: BTreeMap::from([(KO1_GENERATORS[0].0, w.clone())]),
    }
}

pub fn psi_star_module(amb: &GradedAlgebra, el: &Ko1Element) -> Result<AlgebraElement> {
    let mut out = amb.zero();
    for (g, w) in &el.components {
        out = amb.add(&out, &psi_star(amb, w, g)?)?;
    }
    Ok(out)
}

/// ψ_* is a monomorphism: rank check in every degree ≤ d_max.
pub fn psi_star_injective_through(d_max: u64) -> Result<bool> {
    let amb = zeta_algebra(d_max);
    for d in 1..=d_max {
        let target_basis = amb.basis(d - 1)?;
        let pos: BTreeMap<Monomial, usize> = target_basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        let mut rows: Vec<Vec<u64>> = Vec::new();
        for (g, gd) in KO1_GENERATORS {
            if d < gd {
                continue;
            }
            for w in ko_basis(&amb, d - gd)? {
                let image = psi_star(&amb, &w, g)?;
                let mut row = vec![0u64; target_basis.len()];
                for (m, _) in image.terms() {
                    row[pos[m]] = 1;
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            continue;
        }
        let count = rows.len();
        let rank = FpMatrix::from_rows(PrimeField::new(2).unwrap(), rows).rank();
        if rank != count {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaState {
    Zero,
    Nonzero,
}

/// Steinberger's θ′ on the dual Steenrod algebra generators.
pub fn steinberger_theta_h(field: PrimeField, fam: Fam, index: u32) -> Result<ThetaState> {
    let p = field.p();
    match (p, fam, index) {
        (2, Fam::Xi, 0) => Err(Error::InvalidArgument("xi_0 = 1 is not a generator".into())),
        (2, Fam::Xi, 1) => Ok(ThetaState::Nonzero),
        (2, Fam::Xi, _) => Ok(ThetaState::Zero),
        (2, _, _) => Err(Error::InvalidArgument(
            "A(2)_* has only the xi family".into(),
        )),
        (_, Fam::Tau, 0) => Ok(ThetaState::Nonzero),
        (_, Fam::Tau, _) => Ok(ThetaState::Zero),
        (_, Fam::Xi, 0) => Err(Error::InvalidArgument("xi_0 = 1 is not a generator".into())),
        (_, Fam::Xi, _) => Ok(ThetaState::Zero),
        _ => Err(Error::InvalidArgument(
            "A(p)_* generators are the xi and tau families".into(),
        )),
    }
}

/// dim TAQ^d(HF₂, S; HF₂) for d = 0..d_max: the count of words
/// (i₁,…,i_t) with every entry ≥ 4 and i_j ≤ 2 i_{j+1}, of degree
/// 1 + Σ i_j, plus the empty word in degree 1.
pub fn kriz_taq_dimensions(d_max: u64) -> Vec<usize> {
    let mut dims = vec![0usize; d_max as usize + 1];
    if d_max >= 1 {
        dims[1] = 1; // empty word
    }
    // breadth-first by length, appending on the right
    let mut layer: Vec<(u64, u64)> = Vec::new(); // (last entry, total)
    for f in 4..=d_max.saturating_sub(1) {
        layer.push((f, f));
    }
    let mut counts: BTreeMap<u64, usize> = BTreeMap::new();
    while !layer.is_empty() {
        let mut next = Vec::new();
        for &(last, total) in &layer {
            *counts.entry(total).or_insert(0) += 1;
            let min_next = 4.max(last.div_ceil(2));
            for nxt in min_next..=(d_max.saturating_sub(1 + total)) {
                next.push((nxt, total + nxt));
            }
        }
        layer = next;
    }
    for (total, c) in counts {
        let d = total + 1;
        if d <= d_max {
            dims[d as usize] += c;
        }
    }
    dims
}

/// Independent enumeration of the same dimensions, recursing on the
/// leading entry with memoized tail counts.
pub fn kriz_taq_dimensions_alt(d_max: u64) -> Vec<usize> {
    fn tails(first: u64, rem: u64, memo: &mut BTreeMap<(u64, u64), usize>) -> usize {
        if rem == 0 {
            return 1;
        }
        if let Some(&c) = memo.get(&(first, rem)) {
            return c;
        }
        let lo = 4.max(first.div_ceil(2));
        let c = (lo..=rem).map(|g| tails(g, rem - g, memo)).sum();
        memo.insert((first, rem), c);
        c
    }
    let mut memo = BTreeMap::new();
    (0..=d_max)
        .map(|d| {
            if d == 0 {
                return 0;
            }
            if d == 1 {
                return 1;
            }
            let s = d - 1;
            (4..=s).map(|f| tails(f, s - f, &mut memo)).sum()
        })
        .collect()
}

/// Remark 6.12's two rules side by side: the spectrum-level map sends
/// Σ⁻²β_n to ξ_s⁴ exactly when n = 2^s, while the TAQ route sends
/// b_{n−1} to ξ_s² exactly when n = 2^s + 1.
pub fn comparison_remark(n: u64) -> Result<(SElement, SElement)> {
    if n < 2 {
        return Err(Error::InvalidArgument("need n >= 2".into()));
    }
    let first = if n.is_power_of_two() {
        SElement::single(0, SMono::from_pairs(&[(Fam::Xi, n.trailing_zeros(), 4)]), 1)
    } else {
        SElement::zero(0)
    };
    let second = if (n - 1).is_power_of_two() || n == 2 {
        let s = (n - 1).trailing_zeros();
        SElement::single(0, SMono::from_pairs(&[(Fam::Xi, s, 2)]), 1)
    } else {
        SElement::zero(0)
    };
    Ok((first, second))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoObstruction {
    /// coefficient of a₅ in Q⁴a₁
    pub coeff: u64,
    pub target_index: u64,
    /// 5 is an indecomposable degree of A(2)_* (it is not)
    pub target_in_a2: bool,
    pub contradiction: bool,
}

/// Prop 7.7: Q⁴a₁ ≡ a₅ mod decomposables, but A(2)_* has indecomposables
/// only in degrees 2^s − 1 — so no commutative S-algebra map H → MO.
pub fn h_to_mo_obstruction() -> MoObstruction {
    let image = mo_dl_action(4, 1);
    let target_in_a2 = (image.index + 1).is_power_of_two();
    MoObstruction {
        coeff: image.coeff,
        target_index: image.index,
        target_in_a2,
        contradiction: image.coeff != 0 && !target_in_a2,
    }
}

/// Least degree n ≤ d_max where Σ²ku (p = 2) resp. ⊕_r Σ^{2r}ℓ (p odd)
/// has homology but Σ^{∞−2}CP∞₂ has none — the failure of the retract
/// inequality a splitting would force.
pub fn cp_vs_ku_obstruction(field: PrimeField, d_max: u64) -> Result<Option<u64>> {
    let p = field.p() as u64;
    let cp_dim = |n: u64| usize::from(n >= 2 && n % 2 == 0);
    let target: Vec<usize> = if p == 2 {
        // H_*(ku; F₂) = F₂[ζ₁², ζ₂², ζ₃, ζ₄, …], shifted by 2
        let mut gens = vec![
            GeneratorSymbol {
                name: "z1^2".into(),
                degree: 2,
            },
            GeneratorSymbol {
                name: "z2^2".into(),
                degree: 6,
            },
        ];
        let mut s = 3u32;
        while (1u64 << s) - 1 <= d_max {
            gens.push(GeneratorSymbol {
                name: format!("z{s}"),
                degree: (1u64 << s) - 1,
            });
            s += 1;
        }
        let ku = GradedAlgebra::new(Field::prime(2).unwrap(), gens).unwrap();
        let h = ku.hilbert(d_max)?;
        (0..=d_max)
            .map(|n| if n >= 2 { h[(n - 2) as usize] } else { 0 })
            .collect()
    } else {
        // H_*(ℓ; F_p) = F_p[ζ_i] ⊗ Λ(τ̄_j : j ≥ 2), summands shifted by 2r
        let mut gens = Vec::new();
        let mut i = 1u32;
        while 2 * p.pow(i) - 2 <= d_max {
            gens.push(GeneratorSymbol {
                name: format!("z{i}"),
                degree: 2 * p.pow(i) - 2,
            });
            i += 1;
        }
        let mut j = 2u32;
        while 2 * p.pow(j) - 1 <= d_max {
            gens.push(GeneratorSymbol {
                name: format!("tb{j}"),
                degree: 2 * p.pow(j) - 1,
            });
            j += 1;
        }
        let ell = GradedAlgebra::new(Field::prime(field.p()).unwrap(), gens).unwrap();
        let h = ell.hilbert(d_max)?;
        (0..=d_max)
            .map(|n| {
                (1..p)
                    .map(|r| {
                        let shift = 2 * r;
                        if n >= shift {
                            h[(n - shift) as usize]
                        } else {
                            0
                        }
                    })
                    .sum()
            })
            .collect()
    };
    Ok((0..=d_max).find(|&n| target[n as usize] > 0 && cp_dim(n) == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn pf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn mu_action_examples() {
        let f2 = pf(2);
        assert_eq!(
            mu_dl_action(4, 1, f2).unwrap(),
            MuImage { coeff: 1, index: 3 }
        );
        assert!(mu_dl_action(6, 1, f2).unwrap().is_zero());
        assert_eq!(
            mu_dl_action(8, 1, f2).unwrap(),
            MuImage { coeff: 1, index: 5 }
        );
        assert!(mu_dl_action(3, 1, f2).is_err());
    }

    #[test]
    fn mu_indecomposables_match_closed_form() {
        let f2 = pf(2);
        assert_eq!(
            mu_dl_indecomposables(f2, 256).unwrap(),
            vec![1, 2, 4, 8, 16, 32, 64, 128, 256]
        );
        assert_eq!(mu_dl_indecomposables(f2, 3).unwrap(), vec![1, 2]);
        for p in [3u32, 5] {
            let f = pf(p);
            assert_eq!(
                mu_dl_indecomposables(f, 200).unwrap(),
                mu_indecomposables_closed(f, 200),
                "p = {p}"
            );
        }
        let low3: Vec<u64> = mu_indecomposables_closed(pf(3), 10);
        assert!(low3.contains(&1) && low3.contains(&2) && low3.contains(&3));
        assert!(!low3.contains(&5));
    }

    fn big_binom(top: u64, bottom: u64) -> BigUint {
        let mut out = BigUint::from(1u32);
        for i in 0..bottom {
            out = out * BigUint::from(top - i) / BigUint::from(i + 1);
        }
        out
    }

    #[test]
    fn decomp_witnesses() {
        let f2 = pf(2);
        assert_eq!(
            dl_decomp_witness(5, f2).unwrap(),
            DecompWitness {
                source_index: 1,
                op_index: 8,
                coeff: 1
            }
        );
        let w6 = dl_decomp_witness(6, f2).unwrap();
        assert_eq!((w6.source_index, w6.op_index, w6.coeff), (2, 8, 1));
        let w3 = dl_decomp_witness(3, f2).unwrap();
        assert_eq!((w3.source_index, w3.op_index, w3.coeff), (1, 4, 1));
        assert!(dl_decomp_witness(4, f2).is_err());
    }

    #[test]
    fn decomp_witness_nonzero_up_to_200() {
        for p in [2u32, 3, 5] {
            let f = pf(p);
            for n in 2..=200u64 {
                let digits_nonzero = {
                    let mut x = n;
                    let mut c = 0;
                    while x > 0 {
                        if x % p as u64 != 0 {
                            c += 1;
                        }
                        x /= p as u64;
                    }
                    c
                };
                if digits_nonzero < 2 {
                    assert!(dl_decomp_witness(n, f).is_err());
                    continue;
                }
                let w = dl_decomp_witness(n, f).unwrap();
                assert_ne!(w.coeff, 0, "p={p} n={n}");
                // big-integer oracle for the same binomial
                let top = if p == 2 {
                    n - w.source_index - 1
                } else {
                    n - w.source_index - 1
                };
                let oracle = big_binom(top, w.source_index) % BigUint::from(p);
                assert_eq!(BigUint::from(w.coeff), oracle, "p={p} n={n}");
            }
        }
    }

    #[test]
    fn theta_prime_mu_p2_table() {
        let f2 = pf(2);
        let im4 = theta_prime_mu(4, f2).unwrap().image;
        assert_eq!(im4.render(false), "S^2 xi2^2");
        for r in 1..=128u64 {
            let im = theta_prime_mu(r, f2).unwrap().image;
            assert_eq!(im.is_zero(), !r.is_power_of_two(), "r = {r}");
        }
    }

    #[test]
    fn theta_prime_mu_odd_examples() {
        let f3 = pf(3);
        let t3 = theta_prime_mu(3, f3).unwrap();
        assert_eq!(t3.summand, 1);
        assert_eq!(t3.image.render(false), "S^2 xi1");
        let t5 = theta_prime_mu(5, f3).unwrap();
        assert!(t5.image.is_zero());
    }

    #[test]
    fn theta_prime_mu_series_matches_closed() {
        for p in [3u32, 5] {
            let f = pf(p);
            for k in 1..=200u64 {
                let s = theta_prime_mu_series(k, f).unwrap();
                let c = theta_prime_mu_closed(k, f).unwrap();
                assert_eq!(s.summand, c.summand, "p={p} k={k}");
                assert_eq!(s.image, c.image, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn msu_table() {
        assert_eq!(theta_prime_msu(4).unwrap().render(false), "S^4 1");
        assert_eq!(
            theta_prime_msu(12).unwrap().render(false),
            "S^4 xi1^2 xi2^2"
        );
        assert_eq!(
            theta_prime_msu(20).unwrap().render(false),
            "S^4 xi1^2 xi3^2"
        );
        assert!(theta_prime_msu(3).is_err());
        assert!(msu_indecomposable_degree(12));
        assert!(!msu_indecomposable_degree(14));
        // image always lies in span{S^4 xi_m^2 xi_n^2 : m, n >= 0}
        for d in (4..=64u64).step_by(2) {
            let im = theta_prime_msu(d).unwrap();
            for (m, _) in im.terms() {
                assert!(m
                    .factors()
                    .all(|(&(f, _), &e)| f == Fam::Xi && (e == 2 || e == 4)));
                let total: u64 = m.factors().map(|(_, &e)| e).sum();
                assert!(total <= 4);
            }
        }
    }

    #[test]
    fn mo_table() {
        assert_eq!(theta_mo(2).unwrap().render(false), "S^-1 z2");
        assert!(theta_mo(5).unwrap().is_zero());
        assert_eq!(theta_mo(8).unwrap().render(false), "S^-1 z1^2 xi3");
        assert_eq!(theta_mo(4).unwrap().render(false), "S^-1 z1^2 z2");
        assert!(theta_mo(7).is_err());
        assert!(theta_mo(1).is_err());
    }

    #[test]
    fn psi_star_rules() {
        let amb = zeta_algebra(12);
        let one = amb.one();
        assert_eq!(psi_star(&amb, &one, "S^-1 z1^2").unwrap(), one);
        assert_eq!(
            psi_star(&amb, &one, "S^-1 z2").unwrap(),
            amb.generator("z1").unwrap()
        );
        let im = psi_star(&amb, &one, "S^-1 z1^2 z2").unwrap();
        let expect = amb
            .add(
                &amb.generator("z2").unwrap(),
                &amb.pow(&amb.generator("z1").unwrap(), 3).unwrap(),
            )
            .unwrap();
        assert_eq!(im, expect);
        assert!(psi_star(&amb, &one, "S^-1 z3").is_err());
    }

    #[test]
    fn eta_then_psi_is_identity() {
        let amb = zeta_algebra(16);
        for w in [
            amb.one(),
            amb.pow(&amb.generator("z2").unwrap(), 2).unwrap(),
        ] {
            let me = eta_tilde_star(&w);
            assert_eq!(psi_star_module(&amb, &me).unwrap(), w);
        }
    }

    #[test]
    fn psi_star_injectivity() {
        assert!(psi_star_injective_through(20).unwrap());
    }

    #[test]
    fn steinberger_table() {
        assert_eq!(
            steinberger_theta_h(pf(3), Fam::Tau, 0).unwrap(),
            ThetaState::Nonzero
        );
        assert_eq!(
            steinberger_theta_h(pf(3), Fam::Xi, 1).unwrap(),
            ThetaState::Zero
        );
        assert_eq!(
            steinberger_theta_h(pf(2), Fam::Xi, 2).unwrap(),
            ThetaState::Zero
        );
        assert_eq!(
            steinberger_theta_h(pf(2), Fam::Xi, 1).unwrap(),
            ThetaState::Nonzero
        );
        assert!(steinberger_theta_h(pf(2), Fam::Tau, 0).is_err());
    }

    #[test]
    fn kriz_dimensions() {
        let dims = kriz_taq_dimensions(12);
        assert_eq!(dims[1], 1);
        assert_eq!(dims[3], 0);
        assert_eq!(dims[9], 2); // {(8), (4,4)}
        assert_eq!(dims, kriz_taq_dimensions_alt(12));
        assert_eq!(kriz_taq_dimensions(40), kriz_taq_dimensions_alt(40));
    }

    #[test]
    fn comparison_remark_table() {
        let (a, b) = comparison_remark(4).unwrap();
        assert_eq!(a.render(false), "xi2^4");
        assert!(b.is_zero());
        let (a, b) = comparison_remark(5).unwrap();
        assert!(a.is_zero());
        assert_eq!(b.render(false), "xi2^2");
        let (a, b) = comparison_remark(3).unwrap();
        assert!(a.is_zero());
        assert_eq!(b.render(false), "xi1^2");
    }

    #[test]
    fn mo_obstruction() {
        let rep = h_to_mo_obstruction();
        assert_eq!(rep.coeff, 1);
        assert_eq!(rep.target_index, 5);
        assert!(!rep.target_in_a2);
        assert!(rep.contradiction);
    }

    #[test]
    fn cp_ku_obstruction() {
        assert_eq!(cp_vs_ku_obstruction(pf(2), 20).unwrap(), Some(9));
        assert_eq!(cp_vs_ku_obstruction(pf(3), 24).unwrap(), Some(19));
        assert_eq!(cp_vs_ku_obstruction(pf(2), 8).unwrap(), None);
    }
}
