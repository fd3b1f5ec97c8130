//! Homology of free commutative S-algebras on a cell module: polynomial
//! on the classes rationally, free graded-commutative on admissible
//! Dyer-Lashof generators mod p. Also the Künneth-quotient cross-check
//! for the reduced construction.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, GeneratorSymbol, GradedAlgebra, Monomial};
use crate::error::{Error, Result};
use crate::fp::Field;
use crate::word::{enumerate_generators, DLIndex};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellClass {
    pub name: String,
    pub degree: u64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CellModule {
    #[serde(with = "field_str")]
    pub field: Field,
    pub classes: Vec<CellClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom_cell: Option<String>,
}

mod field_str {
    use crate::fp::Field;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(f: &Field, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&f.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Field, D::Error> {
        String::deserialize(d)?.parse().map_err(D::Error::custom)
    }
}

impl CellModule {
    pub fn validate(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for c in &self.classes {
            if !names.insert(c.name.as_str()) {
                return Err(Error::DuplicateGenerator(c.name.clone()));
            }
        }
        if let Some(b) = &self.bottom_cell {
            let Some(cell) = self.classes.iter().find(|c| &c.name == b) else {
                return Err(Error::BadBottomCell(format!("no class named {b}")));
            };
            if cell.degree != 0 {
                return Err(Error::BadBottomCell(format!(
                    "{b} has degree {}, want 0",
                    cell.degree
                )));
            }
            if self.classes.iter().filter(|c| c.degree == 0).count() > 1 {
                return Err(Error::BadBottomCell(
                    "bottom cell must be the unique degree-0 class".into(),
                ));
            }
        }
        Ok(())
    }
}

/// One polynomial/exterior generator Q̄^I x_j of the free algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeGenerator {
    pub name: String,
    pub class: String,
    pub class_degree: u64,
    pub word: DLIndex,
    pub degree: u64,
}

pub struct FreeAlgebraHomology {
    pub algebra: GradedAlgebra,
    pub gens: Vec<FreeGenerator>,
    pub d_max: u64,
}

pub fn generator_name(class: &str, word: &DLIndex) -> String {
    if word.is_empty() {
        class.to_string()
    } else {
        format!("Q{word}.{class}")
    }
}

fn build(field: Field, classes: &[CellClass], d_max: u64) -> Result<FreeAlgebraHomology> {
    let mut gens = Vec::new();
    match field {
        Field::Q => {
            for c in classes {
                gens.push(FreeGenerator {
                    name: c.name.clone(),
                    class: c.name.clone(),
                    class_degree: c.degree,
                    word: DLIndex::empty(),
                    degree: c.degree,
                });
            }
        }
        Field::Fp(pf) => {
            for c in classes {
                if c.degree > d_max {
                    continue;
                }
                for word in enumerate_generators(c.degree, pf, d_max)? {
                    let degree = c.degree + word.degree_shift(pf);
                    gens.push(FreeGenerator {
                        name: generator_name(&c.name, &word),
                        class: c.name.clone(),
                        class_degree: c.degree,
                        word,
                        degree,
                    });
                }
            }
        }
    }
    let symbols = gens
        .iter()
        .map(|g| GeneratorSymbol {
            name: g.name.clone(),
            degree: g.degree,
        })
        .collect();
    Ok(FreeAlgebraHomology {
        algebra: GradedAlgebra::new(field, symbols)?,
        gens,
        d_max,
    })
}

/// H_*(PX; k) for the cell module X, truncated at total degree `d_max`.
pub fn free_algebra_homology(x: &CellModule, d_max: u64) -> Result<FreeAlgebraHomology> {
    x.validate()?;
    build(x.field.clone(), &x.classes, d_max)
}

/// H_*(P̃X; k): the same construction omitting the bottom cell.
pub fn reduced_free_algebra_homology(x: &CellModule, d_max: u64) -> Result<FreeAlgebraHomology> {
    x.validate()?;
    let bottom = x.bottom_cell.as_deref().ok_or(Error::MissingBottomCell)?;
    let classes: Vec<CellClass> = x
        .classes
        .iter()
        .filter(|c| c.name != bottom)
        .cloned()
        .collect();
    build(x.field.clone(), &classes, d_max)
}

/// Dimensions of H_*(PX)/(x₀ − 1, Q̄^I x₀ for len(I) > 0), computed by
/// substitution in the full basis. Independent of the reduced pipeline;
/// the two must agree.
pub fn kunneth_quotient_oracle(x: &CellModule, d_max: u64) -> Result<Vec<usize>> {
    x.validate()?;
    x.field.as_prime()?;
    let bottom = x.bottom_cell.as_deref().ok_or(Error::MissingBottomCell)?;
    let full = free_algebra_homology(x, d_max)?;
    let alg = &full.algebra;
    // indices of the x0-family generators, split by word length
    let mut kill = BTreeSet::new(); // Q̄^I x0, len > 0: substitute 0
    let mut unit = BTreeSet::new(); // x0 itself: substitute 1
    for g in &full.gens {
        let idx = alg.gen_index(&g.name)?;
        if g.class == bottom {
            if g.word.is_empty() {
                unit.insert(idx);
            } else {
                kill.insert(idx);
            }
        }
    }
    let mut dims = Vec::with_capacity(d_max as usize + 1);
    for d in 0..=d_max {
        let mut images: BTreeSet<Monomial> = BTreeSet::new();
        for m in alg.basis_capped(d, Some(d_max))? {
            if m.entries().iter().any(|&(i, _)| kill.contains(&i)) {
                continue;
            }
            let stripped: Vec<(usize, u64)> = m
                .entries()
                .iter()
                .copied()
                .filter(|&(i, _)| !unit.contains(&i))
                .collect();
            images.insert(Monomial::from_entries(stripped));
        }
        dims.push(images.len());
    }
    Ok(dims)
}

impl FreeAlgebraHomology {
    pub fn hilbert(&self) -> Result<Vec<usize>> {
        self.algebra.hilbert(self.d_max)
    }

    pub fn find(&self, name: &str) -> Result<&FreeGenerator> {
        self.gens
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }
}

/// β^ε Q^r applied to a single named generator Q̄^I x_j.
///
/// Strict excess extends the word; excess equality is the p-th power;
/// anything below vanishes. Non-admissible extensions are an error —
/// there is no Adem normalization here.
pub fn apply_q(h: &FreeAlgebraHomology, eps: u8, r: u64, target: &str) -> Result<AlgebraElement> {
    let pf = h.algebra.field().as_prime()?;
    let g = h.find(target)?;
    let extended = g.word.prepend(eps, r);
    // validates eps/p compatibility and r >= 1
    DLIndex::new(extended.entries().to_vec(), pf)?;
    if !extended.is_admissible(pf) {
        return Err(Error::NonAdmissible);
    }
    if extended.is_generator(g.class_degree, pf)? {
        let name = generator_name(&g.class, &extended);
        let degree = g.class_degree + extended.degree_shift(pf);
        if degree > h.d_max {
            return Err(Error::BeyondTruncation {
                degree,
                cap: h.d_max,
            });
        }
        return h.algebra.generator(&name);
    }
    if DLIndex::leading_is_pth_power(eps, r, g.degree, pf) {
        let base = h.algebra.generator(&g.name)?;
        return h.algebra.pow(&base, pf.p() as u64);
    }
    Ok(h.algebra.zero())
}
