use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::de::Error as _;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rat, parse_rat, rat, Rat};

/// Polynomial in two formal variables `s`, `t` with rational coefficients.
///
/// Terms are keyed by the exponent pair `(i, j)` of `s^i t^j`; zero
/// coefficients are never stored, so equality of term maps is equality
/// of polynomials.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BivarPoly {
    terms: BTreeMap<(u32, u32), Rat>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::monomial(0, 0, c)
    }

    pub fn monomial(i: u32, j: u32, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn s() -> Self {
        Self::monomial(1, 0, Rat::one())
    }

    pub fn t() -> Self {
        Self::monomial(0, 1, Rat::one())
    }

    pub fn from_terms<I: IntoIterator<Item = ((u32, u32), Rat)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Rat> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest `i + j` over stored terms; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::from_terms(self.terms.iter().map(|(&k, x)| (k, x * c)))
    }

    /// `P(s, t) -> P(t, s)`.
    pub fn swap_vars(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(&(i, j), x)| ((j, i), x.clone())))
    }

    pub fn eval(&self, s: &Rat, t: &Rat) -> Rat {
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let powers = |x: &Rat, n: usize| {
            let mut out = Vec::with_capacity(n + 1);
            let mut acc = Rat::one();
            for _ in 0..=n {
                out.push(acc.clone());
                acc *= x;
            }
            out
        };
        let (sp, tp) = (powers(s, max_i), powers(t, max_j));
        self.terms
            .iter()
            .fold(Rat::zero(), |acc, (&(i, j), c)| acc + c * &sp[i as usize] * &tp[j as usize])
    }

    pub fn eval_int(&self, s: i64, t: i64) -> Rat {
        self.eval(&rat(s), &rat(t))
    }

    /// `(i, j, "p/q")` triples in lexicographic `(i, j)` order.
    pub fn to_triples(&self) -> Vec<(u32, u32, String)> {
        self.terms.iter().map(|(&(i, j), c)| (i, j, format_rat(c))).collect()
    }
}

/// The variable a binomial polynomial is taken in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinomVar {
    S,
    T,
    SPlusT,
}

impl BinomVar {
    fn poly(self) -> BivarPoly {
        match self {
            BinomVar::S => BivarPoly::s(),
            BinomVar::T => BivarPoly::t(),
            BinomVar::SPlusT => BivarPoly::s() + BivarPoly::t(),
        }
    }
}

/// `binom(v + shift, k) = (v+shift)(v+shift-1)...(v+shift-k+1) / k!`,
/// expanded as a polynomial in `v`.
pub fn binom_poly(var: BinomVar, shift: i64, k: u32) -> BivarPoly {
    let v = var.poly();
    let mut acc = BivarPoly::one();
    let mut factorial = Rat::one();
    for i in 0..k as i64 {
        acc = &acc * &(&v + &BivarPoly::constant(rat(shift - i)));
        factorial *= rat(i + 1);
    }
    acc.scale(&factorial.recip())
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, c.clone());
        }
        out
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(i, j, -c.clone());
        }
        out
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (&(i1, j1), a) in &self.terms {
            for (&(i2, j2), b) in &rhs.terms {
                out.add_term(i1 + i2, j1 + j2, a * b);
            }
        }
        out
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly::from_terms(self.terms.iter().map(|(&k, x)| (k, -x.clone())))
    }
}

macro_rules! forward_owned {
    ($($tr:ident :: $m:ident),*) => {$(
        impl $tr for BivarPoly {
            type Output = BivarPoly;
            fn $m(self, rhs: BivarPoly) -> BivarPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add::add, Sub::sub, Mul::mul);

impl std::iter::Sum for BivarPoly {
    fn sum<I: Iterator<Item = BivarPoly>>(iter: I) -> BivarPoly {
        iter.fold(BivarPoly::zero(), |acc, p| &acc + &p)
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}", format_rat(c))?;
            match i {
                0 => {}
                1 => write!(f, "*s")?,
                _ => write!(f, "*s^{i}")?,
            }
            match j {
                0 => {}
                1 => write!(f, "*t")?,
                _ => write!(f, "*t^{j}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let mut seq = ser.serialize_seq(Some(self.terms.len()))?;
        for triple in self.to_triples() {
            seq.serialize_element(&triple)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let raw = Vec::<(u32, u32, String)>::deserialize(de)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (i, j, c) in raw {
            terms.push(((i, j), parse_rat(&c).map_err(D::Error::custom)?));
        }
        Ok(BivarPoly::from_terms(terms))
    }
}
