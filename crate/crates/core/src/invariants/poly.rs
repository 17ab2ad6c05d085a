//! Laurent polynomials in one variable `A`.

use std::collections::BTreeMap;
use std::fmt::{self, Debug};
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{Float, FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Coefficient ring for polynomials and state sums.
pub trait Coefficient:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + FromPrimitive
    + Send
    + Sync
{
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + FromPrimitive
        + Send
        + Sync
{
}

/// Dense Laurent polynomial: `coeffs[k]` multiplies `A^(low + k)`.
///
/// Kept canonical: the zero polynomial has no coefficients and `low == 0`,
/// otherwise the first and last coefficients are nonzero. Structural
/// equality is therefore polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly<C> {
    low: i32,
    coeffs: Vec<C>,
}

impl<C: Coefficient> LaurentPoly<C> {
    pub fn zero() -> Self {
        LaurentPoly {
            low: 0,
            coeffs: Vec::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    /// `c · A^exp`.
    pub fn monomial(c: C, exp: i32) -> Self {
        let mut p = LaurentPoly {
            low: exp,
            coeffs: vec![c],
        };
        p.trim();
        p
    }

    /// Sum of `(exponent, coefficient)` terms; repeated exponents add up.
    pub fn from_terms<I: IntoIterator<Item = (i32, C)>>(terms: I) -> Self {
        let mut acc: BTreeMap<i32, C> = BTreeMap::new();
        for (e, c) in terms {
            let slot = acc.entry(e).or_insert_with(C::zero);
            *slot = slot.clone() + c;
        }
        let Some((&lo, _)) = acc.iter().next() else {
            return Self::zero();
        };
        let hi = *acc.keys().next_back().unwrap();
        let mut coeffs = vec![C::zero(); (hi - lo + 1) as usize];
        for (e, c) in acc {
            coeffs[(e - lo) as usize] = c;
        }
        let mut p = LaurentPoly { low: lo, coeffs };
        p.trim();
        p
    }

    /// `δ = -A^2 - A^-2`, the value of an extra loop.
    pub fn delta() -> Self {
        Self::from_terms([(-2, -C::one()), (2, -C::one())])
    }

    /// `(-A^3)^k` for any integer `k`.
    pub fn writhe_factor(k: i64) -> Self {
        let c = if k % 2 == 0 { C::one() } else { -C::one() };
        Self::monomial(c, (3 * k) as i32)
    }

    fn trim(&mut self) {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
            return;
        }
        self.coeffs.drain(..lead);
        self.low += lead as i32;
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.low == 0 && self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Lowest and highest exponents, `None` for zero.
    pub fn exponent_range(&self) -> Option<(i32, i32)> {
        (!self.is_zero()).then(|| (self.low, self.low + self.coeffs.len() as i32 - 1))
    }

    pub fn coefficient(&self, exp: i32) -> C {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            C::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Nonzero terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, &C)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(k, c)| (self.low + k as i32, c))
    }

    /// Multiplication by `A^k`.
    pub fn shift(&self, k: i32) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitution `A -> A^-1`.
    pub fn mirror(&self) -> Self {
        let Some((_, hi)) = self.exponent_range() else {
            return Self::zero();
        };
        LaurentPoly {
            low: -hi,
            coeffs: self.coeffs.iter().rev().cloned().collect(),
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut p = LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
        };
        p.trim();
        p
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn add_assign_ref(&mut self, other: &Self) {
        if other.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = other.clone();
            return;
        }
        let (slo, shi) = self.exponent_range().unwrap();
        let (olo, ohi) = other.exponent_range().unwrap();
        let lo = slo.min(olo);
        let hi = shi.max(ohi);
        if lo < slo {
            let pad = (slo - lo) as usize;
            self.coeffs
                .splice(0..0, std::iter::repeat_n(C::zero(), pad));
            self.low = lo;
        }
        self.coeffs.resize((hi - lo + 1) as usize, C::zero());
        for (k, c) in other.coeffs.iter().enumerate() {
            let i = (olo - lo) as usize + k;
            self.coeffs[i] = self.coeffs[i].clone() + c.clone();
        }
        self.trim();
    }

    /// Value at a real point; `a` must be nonzero when negative exponents occur.
    pub fn evaluate<F: Float>(&self, a: F) -> F
    where
        C: ToPrimitive,
    {
        self.terms().fold(F::zero(), |acc, (e, c)| {
            acc + F::from(c.clone()).expect("coefficient fits the float type") * a.powi(e)
        })
    }

    /// Writes the polynomial in `t = A^-4`; exponents may be fractional.
    pub fn to_jones_string(&self) -> String
    where
        C: Signed + fmt::Display,
    {
        let mut terms: Vec<(i32, &C)> = self.terms().collect();
        terms.sort_by_key(|(e, _)| -e);
        let exps: Vec<String> = terms
            .iter()
            .map(|&(e, _)| {
                // t-exponent is -e/4, reduced
                let (mut num, mut den) = (-e, 4);
                let g = gcd(num.unsigned_abs(), den as u32) as i32;
                num /= g;
                den /= g;
                match (num, den) {
                    (0, _) => String::new(),
                    (1, 1) => "t".to_string(),
                    (n, 1) => format!("t^{n}"),
                    (n, d) => format!("t^({n}/{d})"),
                }
            })
            .collect();
        render(terms.iter().map(|(_, c)| *c).zip(exps))
    }
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a.max(1)
    } else {
        gcd(b, a % b)
    }
}

/// Joins `(coefficient, monomial)` pairs into `-x + 3y - z` form.
fn render<'a, C: Coefficient + Signed + fmt::Display + 'a>(
    terms: impl Iterator<Item = (&'a C, String)>,
) -> String {
    let mut out = String::new();
    for (c, mono) in terms {
        let negative = c.is_negative();
        let mag = c.abs();
        let body = if mono.is_empty() {
            mag.to_string()
        } else if mag.is_one() {
            mono
        } else {
            format!("{mag}{mono}")
        };
        match (out.is_empty(), negative) {
            (true, false) => out.push_str(&body),
            (true, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (false, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (false, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<C: Coefficient + Signed + fmt::Display> fmt::Display for LaurentPoly<C> {
    /// `-A^-2 - A^2` style, exponents ascending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = render(self.terms().map(|(e, c)| {
            let mono = match e {
                0 => String::new(),
                1 => "A".to_string(),
                e => format!("A^{e}"),
            };
            (c, mono)
        }));
        f.write_str(&s)
    }
}

impl<C: Coefficient> Debug for LaurentPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms()).finish()
    }
}

impl<C: Coefficient> Add for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(self, rhs: Self) -> LaurentPoly<C> {
        let mut out = self.clone();
        out.add_assign_ref(rhs);
        out
    }
}

impl<C: Coefficient> Add for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn add(mut self, rhs: Self) -> LaurentPoly<C> {
        self.add_assign_ref(&rhs);
        self
    }
}

impl<C: Coefficient> std::ops::AddAssign<&LaurentPoly<C>> for LaurentPoly<C> {
    fn add_assign(&mut self, rhs: &LaurentPoly<C>) {
        self.add_assign_ref(rhs);
    }
}

impl<C: Coefficient> Neg for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        LaurentPoly {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }
}

impl<C: Coefficient> Neg for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn neg(self) -> LaurentPoly<C> {
        -&self
    }
}

impl<C: Coefficient> Sub for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        self + &(-rhs)
    }
}

impl<C: Coefficient> Sub for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn sub(self, rhs: Self) -> LaurentPoly<C> {
        &self - &rhs
    }
}

impl<C: Coefficient> Mul for &LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![C::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        let mut p = LaurentPoly {
            low: self.low + rhs.low,
            coeffs,
        };
        p.trim();
        p
    }
}

impl<C: Coefficient> Mul for LaurentPoly<C> {
    type Output = LaurentPoly<C>;
    fn mul(self, rhs: Self) -> LaurentPoly<C> {
        &self * &rhs
    }
}

impl<C: Coefficient + Serialize> Serialize for LaurentPoly<C> {
    /// JSON object from exponent (as a string) to coefficient, ascending.
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.terms().count()))?;
        for (e, c) in self.terms() {
            map.serialize_entry(&e.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de, C: Coefficient + Deserialize<'de>> Deserialize<'de> for LaurentPoly<C> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: BTreeMap<String, C> = BTreeMap::deserialize(d)?;
        let mut terms = Vec::with_capacity(raw.len());
        for (k, c) in raw {
            let e: i32 = k
                .parse()
                .map_err(|_| D::Error::custom(format!("bad exponent `{k}`")))?;
            terms.push((e, c));
        }
        Ok(Self::from_terms(terms))
    }
}
