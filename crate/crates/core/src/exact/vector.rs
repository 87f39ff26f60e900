use std::fmt;
use std::ops::{Add, Deref, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::de::{SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::rational::{format_rational, rat, serde_rational, Rational};
use crate::error::{check_dim, Result};

/// Dense vector of rationals with a fixed length.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct VectorQ(Vec<Rational>);

impl VectorQ {
    pub fn new(entries: Vec<Rational>) -> Self {
        VectorQ(entries)
    }

    pub fn zeros(n: usize) -> Self {
        VectorQ(vec![Rational::zero(); n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = Self::zeros(n);
        v.0[i] = Rational::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        VectorQ(xs.iter().map(|&x| rat(x)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_nonneg(&self) -> bool {
        self.0.iter().all(|x| !x.is_negative())
    }

    pub fn dot(&self, other: &VectorQ) -> Rational {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn checked_dot(&self, other: &VectorQ) -> Result<Rational> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.dot(other))
    }

    pub fn scale(&self, c: &Rational) -> VectorQ {
        VectorQ(self.0.iter().map(|x| x * c).collect())
    }

    /// Indices of the nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    pub fn abs(&self) -> VectorQ {
        VectorQ(self.0.iter().map(|x| x.abs()).collect())
    }

    pub fn pointwise_max(&self, other: &VectorQ) -> VectorQ {
        VectorQ(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a >= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    pub fn pointwise_min(&self, other: &VectorQ) -> VectorQ {
        VectorQ(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| if a <= b { a.clone() } else { b.clone() })
                .collect(),
        )
    }

    /// Componentwise `self <= other`.
    pub fn le(&self, other: &VectorQ) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn sum(&self) -> Rational {
        self.0.iter().fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Integer vector on the same ray: denominators cleared, content divided
    /// out, sign preserved.
    pub fn primitive(&self) -> VectorQ {
        if self.is_zero() {
            return self.clone();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let ints: Vec<BigInt> = self
            .0
            .iter()
            .map(|x| x.numer() * (&lcm / x.denom()))
            .collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        VectorQ(
            ints.into_iter()
                .map(|x| Rational::from_integer(x / &g))
                .collect(),
        )
    }

    /// Primitive representative of the line through `self`, first nonzero
    /// entry positive.
    pub fn line_normal_form(&self) -> VectorQ {
        let p = self.primitive();
        match p.0.iter().find(|x| !x.is_zero()) {
            Some(x) if x.is_negative() => -&p,
            _ => p,
        }
    }

    /// `Some(c)` with `self = c * other` when the vectors are parallel.
    pub fn multiple_of(&self, other: &VectorQ) -> Option<Rational> {
        if self.dim() != other.dim() {
            return None;
        }
        let pivot = other.0.iter().position(|x| !x.is_zero())?;
        let c = &self.0[pivot] / &other.0[pivot];
        (other.scale(&c) == *self).then_some(c)
    }
}

impl Deref for VectorQ {
    type Target = [Rational];

    fn deref(&self) -> &[Rational] {
        &self.0
    }
}

impl Index<usize> for VectorQ {
    type Output = Rational;

    fn index(&self, i: usize) -> &Rational {
        &self.0[i]
    }
}

impl FromIterator<Rational> for VectorQ {
    fn from_iter<I: IntoIterator<Item = Rational>>(iter: I) -> Self {
        VectorQ(iter.into_iter().collect())
    }
}

impl From<Vec<Rational>> for VectorQ {
    fn from(v: Vec<Rational>) -> Self {
        VectorQ(v)
    }
}

impl Add for &VectorQ {
    type Output = VectorQ;

    fn add(self, rhs: &VectorQ) -> VectorQ {
        debug_assert_eq!(self.dim(), rhs.dim());
        VectorQ(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &VectorQ {
    type Output = VectorQ;

    fn sub(self, rhs: &VectorQ) -> VectorQ {
        debug_assert_eq!(self.dim(), rhs.dim());
        VectorQ(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &VectorQ {
    type Output = VectorQ;

    fn neg(self) -> VectorQ {
        VectorQ(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&VectorQ> for &Rational {
    type Output = VectorQ;

    fn mul(self, rhs: &VectorQ) -> VectorQ {
        rhs.scale(self)
    }
}

impl fmt::Debug for VectorQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for VectorQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str(&format_rational(x))?;
        }
        f.write_str(")")
    }
}

impl Serialize for VectorQ {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for x in &self.0 {
            seq.serialize_element(&format_rational(x))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for VectorQ {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Elem(Rational);
        impl<'de> Deserialize<'de> for Elem {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                serde_rational::deserialize(d).map(Elem)
            }
        }
        struct Seq;
        impl<'de> Visitor<'de> for Seq {
            type Value = VectorQ;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of rational strings")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut a: A) -> std::result::Result<VectorQ, A::Error> {
                let mut out = Vec::new();
                while let Some(Elem(x)) = a.next_element()? {
                    out.push(x);
                }
                Ok(VectorQ(out))
            }
        }
        d.deserialize_seq(Seq)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::ratio;

    #[test]
    fn primitive_clears_denominators_and_content() {
        let v = VectorQ::new(vec![ratio(1, 2), ratio(-3, 4), rat(0)]);
        assert_eq!(v.primitive(), VectorQ::from_ints(&[2, -3, 0]));
        let w = VectorQ::from_ints(&[0, -4, 6]);
        assert_eq!(w.primitive(), VectorQ::from_ints(&[0, -2, 3]));
        assert_eq!(w.line_normal_form(), VectorQ::from_ints(&[0, 2, -3]));
    }

    #[test]
    fn multiple_detection() {
        let a = VectorQ::from_ints(&[1, 0, 1]);
        assert_eq!(VectorQ::from_ints(&[3, 0, 3]).multiple_of(&a), Some(rat(3)));
        assert_eq!(VectorQ::from_ints(&[3, 1, 3]).multiple_of(&a), None);
        assert_eq!(a.multiple_of(&VectorQ::zeros(3)), None);
    }

    #[test]
    fn json_uses_rational_strings() {
        let v = VectorQ::new(vec![ratio(1, 2), rat(-3)]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"["1/2","-3"]"#);
        let back: VectorQ = serde_json::from_str(r#"["1/2", -3]"#).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<VectorQ>("[0.5]").is_err());
    }
}
