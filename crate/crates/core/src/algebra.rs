//! Free graded-commutative algebras with Koszul signs.
//!
//! Generators are held in a fixed canonical order (degree, then name);
//! monomials are exponent vectors on that order. Odd-degree generators
//! square to zero away from characteristic 2.

use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use serde_json::Value;

use crate::error::{Error, Result};
use crate::fp::{Field, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorSymbol {
    pub name: String,
    pub degree: u64,
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    field: Field,
    gens: Vec<GeneratorSymbol>,
    fingerprint: u64,
}

/// Sorted exponent vector; entries are (generator index, exponent > 0).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    gens: Vec<(usize, u64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraElement {
    algebra_id: u64,
    terms: BTreeMap<Monomial, Scalar>,
}

impl GradedAlgebra {
    pub fn new(field: Field, mut gens: Vec<GeneratorSymbol>) -> Result<Self> {
        gens.sort_by(|a, b| (a.degree, &a.name).cmp(&(b.degree, &b.name)));
        for w in gens.windows(2) {
            if w[0].name == w[1].name {
                return Err(Error::DuplicateGenerator(w[0].name.clone()));
            }
        }
        let mut names: Vec<&str> = gens.iter().map(|g| g.name.as_str()).collect();
        names.sort_unstable();
        if names.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::DuplicateGenerator(
                names
                    .windows(2)
                    .find(|w| w[0] == w[1])
                    .map(|w| w[0].to_string())
                    .unwrap(),
            ));
        }
        let mut h = std::collections::hash_map::DefaultHasher::new();
        format!("{field}").hash(&mut h);
        gens.hash(&mut h);
        Ok(GradedAlgebra {
            field,
            gens,
            fingerprint: h.finish(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generators(&self) -> &[GeneratorSymbol] {
        &self.gens
    }

    pub fn id(&self) -> u64 {
        self.fingerprint
    }

    pub fn gen_index(&self, name: &str) -> Result<usize> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    fn odd(&self, idx: usize) -> bool {
        self.gens[idx].degree % 2 == 1 && self.field.characteristic() != 2
    }

    pub fn monomial_degree(&self, m: &Monomial) -> u64 {
        m.gens.iter().map(|&(i, e)| self.gens[i].degree * e).sum()
    }

    pub fn zero(&self) -> AlgebraElement {
        AlgebraElement {
            algebra_id: self.fingerprint,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> AlgebraElement {
        self.from_terms(vec![(Monomial::default(), self.field.one())])
    }

    pub fn scalar(&self, c: Scalar) -> AlgebraElement {
        self.from_terms(vec![(Monomial::default(), c)])
    }

    pub fn generator(&self, name: &str) -> Result<AlgebraElement> {
        let idx = self.gen_index(name)?;
        Ok(self.from_terms(vec![(
            Monomial {
                gens: vec![(idx, 1)],
            },
            self.field.one(),
        )]))
    }

    pub fn monomial(&self, m: Monomial) -> AlgebraElement {
        self.from_terms(vec![(m, self.field.one())])
    }

    fn from_terms(&self, terms: Vec<(Monomial, Scalar)>) -> AlgebraElement {
        let mut out = self.zero();
        for (m, c) in terms {
            self.accumulate(&mut out, m, c);
        }
        out
    }

    fn accumulate(&self, into: &mut AlgebraElement, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = into.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.field.add(o.get(), &c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = a.clone();
        for (m, c) in &b.terms {
            self.accumulate(&mut out, m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        let mut out = self.zero();
        for (m, x) in &a.terms {
            self.accumulate(&mut out, m.clone(), self.field.mul(c, x));
        }
        Ok(out)
    }

    pub fn neg(&self, a: &AlgebraElement) -> Result<AlgebraElement> {
        self.scale(&self.field.from_i64(-1), a)
    }

    pub fn multiply(&self, a: &AlgebraElement, b: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = self.zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let Some((m, sign)) = self.mul_monomials(ma, mb) else {
                    continue;
                };
                let mut c = self.field.mul(ca, cb);
                if sign < 0 {
                    c = self.field.neg(&c);
                }
                self.accumulate(&mut out, m, c);
            }
        }
        Ok(out)
    }

    /// Merge two sorted exponent vectors; returns None if an odd-degree
    /// generator squares away from characteristic 2. The Koszul sign
    /// counts odd-odd transpositions needed to interleave `b` into `a`.
    fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, i64)> {
        let mut out: Vec<(usize, u64)> = Vec::with_capacity(a.gens.len() + b.gens.len());
        let mut sign = 1i64;
        let mut ai = a.gens.iter().peekable();
        let mut bi = b.gens.iter().peekable();
        // odd generators of `a` not yet consumed (each has exponent 1)
        let mut odd_remaining: u64 = a.gens.iter().filter(|&&(i, _)| self.odd(i)).count() as u64;
        loop {
            match (ai.peek(), bi.peek()) {
                (Some(&&(ia, ea)), Some(&&(ib, _))) if ia <= ib => {
                    if ia == ib && self.odd(ia) {
                        return None;
                    }
                    if self.odd(ia) {
                        odd_remaining -= 1;
                    }
                    out.push((ia, ea));
                    ai.next();
                }
                (_, Some(&&(ib, eb))) => {
                    if self.odd(ib) && odd_remaining % 2 == 1 {
                        sign = -sign;
                    }
                    out.push((ib, eb));
                    bi.next();
                }
                (Some(&&(ia, ea)), None) => {
                    out.push((ia, ea));
                    ai.next();
                }
                (None, None) => break,
            }
        }
        // collapse equal neighbours (even generators from both factors)
        let mut merged: Vec<(usize, u64)> = Vec::with_capacity(out.len());
        for (i, e) in out {
            match merged.last_mut() {
                Some(last) if last.0 == i => last.1 += e,
                _ => merged.push((i, e)),
            }
        }
        Some((Monomial { gens: merged }, sign))
    }

    pub fn pow(&self, a: &AlgebraElement, n: u64) -> Result<AlgebraElement> {
        let mut out = self.one();
        for _ in 0..n {
            out = self.multiply(&out, a)?;
        }
        Ok(out)
    }

    pub fn augmentation(&self, a: &AlgebraElement) -> Result<Scalar> {
        self.check(a)?;
        Ok(a.terms
            .get(&Monomial::default())
            .cloned()
            .unwrap_or_else(|| self.field.zero()))
    }

    /// All degree-`d` monomials in canonical order. Fails if degree-0
    /// generators are present without an exponent cap.
    pub fn basis(&self, d: u64) -> Result<Vec<Monomial>> {
        self.basis_capped(d, None)
    }

    /// As `basis`, but degree-0 generators are allowed exponents up to
    /// `deg0_cap`.
    pub fn basis_capped(&self, d: u64, deg0_cap: Option<u64>) -> Result<Vec<Monomial>> {
        if deg0_cap.is_none() && self.gens.iter().any(|g| g.degree == 0) {
            return Err(Error::UnboundedDegreeZero);
        }
        let mut out = Vec::new();
        let mut stack: Vec<(usize, u64)> = Vec::new();
        self.basis_rec(0, d, deg0_cap, &mut stack, &mut out);
        out.sort();
        Ok(out)
    }

    fn basis_rec(
        &self,
        idx: usize,
        remaining: u64,
        deg0_cap: Option<u64>,
        stack: &mut Vec<(usize, u64)>,
        out: &mut Vec<Monomial>,
    ) {
        if idx == self.gens.len() {
            if remaining == 0 {
                out.push(Monomial {
                    gens: stack.clone(),
                });
            }
            return;
        }
        let deg = self.gens[idx].degree;
        let max_e = if deg == 0 {
            deg0_cap.unwrap_or(0)
        } else if self.odd(idx) {
            1.min(remaining / deg)
        } else {
            remaining / deg
        };
        self.basis_rec(idx + 1, remaining, deg0_cap, stack, out);
        for e in 1..=max_e {
            stack.push((idx, e));
            self.basis_rec(idx + 1, remaining - deg * e, deg0_cap, stack, out);
            stack.pop();
        }
    }

    pub fn hilbert(&self, d_max: u64) -> Result<Vec<usize>> {
        (0..=d_max).map(|d| Ok(self.basis(d)?.len())).collect()
    }

    pub fn contains(&self, a: &AlgebraElement) -> bool {
        a.algebra_id == self.fingerprint
    }

    fn check(&self, a: &AlgebraElement) -> Result<()> {
        if a.algebra_id != self.fingerprint {
            return Err(Error::MixedAlgebra);
        }
        Ok(())
    }

    pub fn element_degree(&self, a: &AlgebraElement) -> Option<u64> {
        let mut deg = None;
        for m in a.terms.keys() {
            let d = self.monomial_degree(m);
            match deg {
                None => deg = Some(d),
                Some(d0) if d0 != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn monomial_to_json(&self, m: &Monomial) -> Value {
        let gens: Vec<Value> = m
            .gens
            .iter()
            .map(|&(i, e)| serde_json::json!([self.gens[i].name, e]))
            .collect();
        serde_json::json!({ "gens": gens })
    }

    pub fn monomial_from_json(&self, v: &Value) -> Result<Monomial> {
        let gens = v
            .get("gens")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("monomial wants a \"gens\" list".into()))?;
        let mut entries = Vec::new();
        for pair in gens {
            let arr = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse("monomial entry must be [name, exp]".into()))?;
            let name = arr[0]
                .as_str()
                .ok_or_else(|| Error::Parse("generator name must be a string".into()))?;
            let exp = arr[1]
                .as_u64()
                .filter(|&e| e > 0)
                .ok_or_else(|| Error::Parse("exponent must be a positive integer".into()))?;
            entries.push((self.gen_index(name)?, exp));
        }
        entries.sort();
        for w in entries.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Parse("repeated generator in monomial".into()));
            }
        }
        Ok(Monomial { gens: entries })
    }

    pub fn element_to_json(&self, a: &AlgebraElement) -> Result<Value> {
        self.check(a)?;
        Ok(Value::Array(
            a.terms
                .iter()
                .map(|(m, c)| serde_json::json!([self.monomial_to_json(m), c.to_coeff_string()]))
                .collect(),
        ))
    }

    pub fn element_from_json(&self, v: &Value) -> Result<AlgebraElement> {
        let arr = v
            .as_array()
            .ok_or_else(|| Error::Parse("element wants a list of (monomial, coeff)".into()))?;
        let mut out = self.zero();
        for pair in arr {
            let pair = pair
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse("element entry must be [monomial, coeff]".into()))?;
            let m = self.monomial_from_json(&pair[0])?;
            let c = pair[1]
                .as_str()
                .ok_or_else(|| Error::Parse("coefficient must be a string".into()))?;
            self.accumulate(&mut out, m, self.field.parse_scalar(c)?);
        }
        Ok(out)
    }

    pub fn render(&self, a: &AlgebraElement) -> String {
        if a.terms.is_empty() {
            return "0".into();
        }
        a.terms
            .iter()
            .map(|(m, c)| {
                let mono = if m.gens.is_empty() {
                    "1".to_string()
                } else {
                    m.gens
                        .iter()
                        .map(|&(i, e)| {
                            if e == 1 {
                                self.gens[i].name.clone()
                            } else {
                                format!("{}^{}", self.gens[i].name, e)
                            }
                        })
                        .collect::<Vec<_>>()
                        .join("*")
                };
                if c.is_one() {
                    mono
                } else if m.gens.is_empty() {
                    c.to_coeff_string()
                } else {
                    format!("{}*{}", c.to_coeff_string(), mono)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn entries(&self) -> &[(usize, u64)] {
        &self.gens
    }

    pub fn from_entries(mut entries: Vec<(usize, u64)>) -> Self {
        entries.retain(|&(_, e)| e > 0);
        entries.sort();
        Monomial { gens: entries }
    }
}

impl AlgebraElement {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}
