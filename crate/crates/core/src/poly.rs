//! Exact multivariate polynomials over the rationals in two groups of
//! variables: species concentrations and rate-constant symbols.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// A power product `∏ k_i^{a_i} · ∏ x_j^{b_j}`.
///
/// Exponent vectors are stored without trailing zeros so that monomials over
/// rings of different sizes compare equal when they denote the same product.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    rates: Vec<u32>,
    species: Vec<u32>,
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn add_exponents(a: &[u32], b: &[u32]) -> Vec<u32> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0))
        .collect()
}

fn lex_desc(a: &[u32], b: &[u32]) -> Ordering {
    let n = a.len().max(b.len());
    for i in 0..n {
        let (x, y) = (a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0));
        match y.cmp(&x) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(rates: Vec<u32>, species: Vec<u32>) -> Self {
        Self { rates: trim(rates), species: trim(species) }
    }

    /// The monomial `x_s` raised to `exp`.
    pub fn species_power(s: usize, exp: u32) -> Self {
        let mut species = vec![0; s + 1];
        species[s] = exp;
        Self::new(vec![], species)
    }

    /// The single rate symbol with index `k`.
    pub fn rate(k: usize) -> Self {
        let mut rates = vec![0; k + 1];
        rates[k] = 1;
        Self::new(rates, vec![])
    }

    pub fn species_exponent(&self, s: usize) -> u32 {
        self.species.get(s).copied().unwrap_or(0)
    }

    pub fn rate_exponent(&self, k: usize) -> u32 {
        self.rates.get(k).copied().unwrap_or(0)
    }

    pub fn species_degree(&self) -> u32 {
        self.species.iter().sum()
    }

    pub fn rate_degree(&self) -> u32 {
        self.rates.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.rates.is_empty() && self.species.is_empty()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            rates: add_exponents(&self.rates, &other.rates),
            species: add_exponents(&self.species, &other.species),
        }
    }
}

/// Printing order: graded lexicographic on species exponents (higher first),
/// then graded lexicographic on rate exponents.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .species_degree()
            .cmp(&self.species_degree())
            .then_with(|| lex_desc(&self.species, &other.species))
            .then_with(|| other.rate_degree().cmp(&self.rate_degree()))
            .then_with(|| lex_desc(&self.rates, &other.rates))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial with exact rational coefficients. Zero coefficients are never
/// stored, so structural equality is polynomial equality.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolicPolynomial {
    terms: BTreeMap<Monomial, BigRational>,
}

impl SymbolicPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn term(c: BigRational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(BigRational::one(), m)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in printing order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    /// Renders the polynomial with the given variable names, e.g.
    /// `2*k23*C - 2*k32*A*D^2`.
    pub fn display<'a>(&'a self, species: &'a [String], rates: &'a [String]) -> PolyDisplay<'a> {
        PolyDisplay { poly: self, species, rates }
    }
}

impl Add for &SymbolicPolynomial {
    type Output = SymbolicPolynomial;
    fn add(self, rhs: &SymbolicPolynomial) -> SymbolicPolynomial {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SymbolicPolynomial {
    type Output = SymbolicPolynomial;
    fn sub(self, rhs: &SymbolicPolynomial) -> SymbolicPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &SymbolicPolynomial {
    type Output = SymbolicPolynomial;
    fn neg(self) -> SymbolicPolynomial {
        SymbolicPolynomial { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Mul for &SymbolicPolynomial {
    type Output = SymbolicPolynomial;
    fn mul(self, rhs: &SymbolicPolynomial) -> SymbolicPolynomial {
        let mut out = SymbolicPolynomial::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

pub struct PolyDisplay<'a> {
    poly: &'a SymbolicPolynomial,
    species: &'a [String],
    rates: &'a [String],
}

fn var_name(names: &[String], i: usize, prefix: &str) -> String {
    names.get(i).cloned().unwrap_or_else(|| format!("{prefix}{i}"))
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.poly.terms().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let abs = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (k, &e) in m.rates.iter().enumerate() {
                if e > 0 {
                    factors.push(power(&var_name(self.rates, k, "k#"), e));
                }
            }
            for (s, &e) in m.species.iter().enumerate() {
                if e > 0 {
                    factors.push(power(&var_name(self.species, s, "x"), e));
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

fn power(name: &str, e: u32) -> String {
    if e == 1 {
        name.to_string()
    } else {
        format!("{name}^{e}")
    }
}
