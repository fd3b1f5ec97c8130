//! Leibniz derivations on free graded-commutative algebras, the
//! augmented derivation Δ that annihilates non-trivial products, and the
//! composite sending a named homotopy symbol through its homology image
//! to its Δ-image.
//!
//! Sign convention: a derivation carries the parity of its target shift,
//! so ∂(uv) = ∂(u)v + (−1)^{|u|·parity(shift)} u ∂(v).

use std::collections::BTreeMap;

use crate::algebra::{AlgebraElement, GradedAlgebra};
use crate::error::{Error, Result};
use crate::fp::{Field, Scalar};
use crate::free::FreeAlgebraHomology;

/// Element of a plain graded vector space with named basis classes.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct VectorElement {
    terms: BTreeMap<String, Scalar>,
}

impl VectorElement {
    pub fn zero() -> Self {
        VectorElement::default()
    }

    pub fn basis(name: &str, field: &Field) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(name.to_string(), field.one());
        VectorElement { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &VectorElement, field: &Field) -> VectorElement {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            let sum = match out.terms.get(k) {
                Some(u) => field.add(u, v),
                None => v.clone(),
            };
            if sum.is_zero() {
                out.terms.remove(k);
            } else {
                out.terms.insert(k.clone(), sum);
            }
        }
        out
    }

    pub fn scale(&self, c: &Scalar, field: &Field) -> VectorElement {
        let mut out = VectorElement::zero();
        for (k, v) in &self.terms {
            let prod = field.mul(c, v);
            if !prod.is_zero() {
                out.terms.insert(k.clone(), prod);
            }
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&String, &Scalar)> {
        self.terms.iter()
    }

    pub fn render(&self) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        self.terms
            .iter()
            .map(|(k, c)| {
                if c.is_one() {
                    k.clone()
                } else {
                    format!("{}*{}", c.to_coeff_string(), k)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Derivation into the algebra itself (viewed as a module over itself).
pub struct LeibnizDerivation<'a> {
    algebra: &'a GradedAlgebra,
    values: BTreeMap<usize, AlgebraElement>,
    target_shift: i64,
}

impl<'a> LeibnizDerivation<'a> {
    pub fn new(
        algebra: &'a GradedAlgebra,
        values: BTreeMap<String, AlgebraElement>,
        target_shift: i64,
    ) -> Result<Self> {
        let mut by_index = BTreeMap::new();
        for (name, v) in values {
            let idx = algebra.gen_index(&name)?;
            if let Some(vd) = algebra.element_degree(&v) {
                let expected = algebra.generators()[idx].degree as i64 + target_shift;
                if !v.is_zero() && vd as i64 != expected {
                    return Err(Error::DegreeInconsistent {
                        gen: name.clone(),
                        got: vd as i64,
                        expected,
                    });
                }
            }
            by_index.insert(idx, v);
        }
        // unspecified generators map to 0
        for idx in 0..algebra.generators().len() {
            by_index.entry(idx).or_insert_with(|| algebra.zero());
        }
        Ok(LeibnizDerivation {
            algebra,
            values: by_index,
            target_shift,
        })
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.algebra.contains(a) {
            return Err(Error::MixedAlgebra);
        }
        let alg = self.algebra;
        let mut out = alg.zero();
        for (m, c) in a.terms() {
            let dm = self.apply_monomial(m.entries())?;
            out = alg.add(&out, &alg.scale(c, &dm)?)?;
        }
        Ok(out)
    }

    fn apply_monomial(&self, entries: &[(usize, u64)]) -> Result<AlgebraElement> {
        let alg = self.algebra;
        if entries.is_empty() {
            return Ok(alg.zero());
        }
        let (idx, e) = entries[0];
        let g = alg.monomial(crate::algebra::Monomial::from_entries(vec![(idx, 1)]));
        let head_deg = alg.generators()[idx].degree * e;
        // ∂(g^e) = e g^{e-1} ∂g; valid since odd generators have e = 1
        // away from characteristic 2, and signs are trivial in char 2.
        let g_pow_em1 = alg.pow(&g, e - 1)?;
        let dg = &self.values[&idx];
        let term1 = alg.multiply(&alg.scale(&alg.field().from_i64(e as i64), &g_pow_em1)?, dg)?;
        let term1 = alg.multiply(&term1, &self.apply_rest_identity(&entries[1..])?)?;
        let rest_d = self.apply_monomial(&entries[1..])?;
        let g_pow_e = alg.pow(&g, e)?;
        let mut term2 = alg.multiply(&g_pow_e, &rest_d)?;
        if self.target_shift.rem_euclid(2) == 1 && head_deg % 2 == 1 {
            term2 = alg.neg(&term2)?;
        }
        alg.add(&term1, &term2)
    }

    fn apply_rest_identity(&self, entries: &[(usize, u64)]) -> Result<AlgebraElement> {
        Ok(self
            .algebra
            .monomial(crate::algebra::Monomial::from_entries(entries.to_vec())))
    }
}

/// The augmented derivation Δ: kills 1 and every product of two
/// augmentation-kernel elements; a single generator goes to its assigned
/// value in the target vector space.
pub struct AugmentedDerivation<'a> {
    algebra: &'a GradedAlgebra,
    values: BTreeMap<usize, VectorElement>,
    target_degrees: BTreeMap<String, u64>,
}

impl<'a> AugmentedDerivation<'a> {
    pub fn new(
        algebra: &'a GradedAlgebra,
        values: BTreeMap<String, VectorElement>,
        target_classes: &[(String, u64)],
        target_shift: i64,
    ) -> Result<Self> {
        let target_degrees: BTreeMap<String, u64> = target_classes.iter().cloned().collect();
        let mut by_index = BTreeMap::new();
        for (name, v) in values {
            let idx = algebra.gen_index(&name)?;
            let expected = algebra.generators()[idx].degree as i64 + target_shift;
            for (class, _) in v.terms() {
                let d = *target_degrees
                    .get(class)
                    .ok_or_else(|| Error::UnknownGenerator(class.clone()))?;
                if d as i64 != expected {
                    return Err(Error::DegreeInconsistent {
                        gen: name.clone(),
                        got: d as i64,
                        expected,
                    });
                }
            }
            by_index.insert(idx, v);
        }
        for idx in 0..algebra.generators().len() {
            by_index.entry(idx).or_insert_with(VectorElement::zero);
        }
        Ok(AugmentedDerivation {
            algebra,
            values: by_index,
            target_degrees,
        })
    }

    pub fn target_degree(&self, class: &str) -> Option<u64> {
        self.target_degrees.get(class).copied()
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<VectorElement> {
        if !self.algebra.contains(a) {
            return Err(Error::MixedAlgebra);
        }
        let field = self.algebra.field();
        let mut out = VectorElement::zero();
        for (m, c) in a.terms() {
            // only single generators with exponent 1 survive
            if let [(idx, 1)] = m.entries() {
                out = out.add(&self.values[idx].scale(c, field), field);
            }
        }
        Ok(out)
    }
}

/// Δ on the reduced free algebra: Q̄^I x_j ↦ x_j when the word is empty,
/// 0 otherwise. Target is the span of the positive-degree cells.
pub struct TaqDelta<'a> {
    delta: AugmentedDerivation<'a>,
    algebra_id: u64,
}

impl<'a> TaqDelta<'a> {
    pub fn new(h: &'a FreeAlgebraHomology) -> Result<Self> {
        h.algebra.field().as_prime()?;
        let field = h.algebra.field();
        let mut values = BTreeMap::new();
        let mut targets: Vec<(String, u64)> = Vec::new();
        for g in &h.gens {
            if g.word.is_empty() {
                values.insert(g.name.clone(), VectorElement::basis(&g.class, field));
                targets.push((g.class.clone(), g.class_degree));
            } else {
                values.insert(g.name.clone(), VectorElement::zero());
            }
        }
        targets.dedup();
        let delta = AugmentedDerivation::new(&h.algebra, values, &targets, 0)?;
        Ok(TaqDelta {
            delta,
            algebra_id: h.algebra.id(),
        })
    }

    pub fn apply(&self, a: &AlgebraElement) -> Result<VectorElement> {
        self.delta.apply(a).map_err(|e| match e {
            Error::MixedAlgebra => Error::ForeignElement(format!(
                "element does not belong to algebra {:x}",
                self.algebra_id
            )),
            other => other,
        })
    }
}

/// Symbol ↦ Δ(homology image of symbol).
pub fn hurewicz_composite(
    htable: &BTreeMap<String, AlgebraElement>,
    delta: &TaqDelta<'_>,
) -> Result<BTreeMap<String, VectorElement>> {
    htable
        .iter()
        .map(|(sym, el)| Ok((sym.clone(), delta.apply(el)?)))
        .collect()
}
