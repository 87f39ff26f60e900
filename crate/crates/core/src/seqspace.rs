//! The space of two-sided rational sequences `x` for which `L = lim x_k`
//! (k -> +inf) exists and `sum_{k>=1} x_{-k} / 2^k = L`, ordered pointwise,
//! with the subspaces
//!
//! * `B = {x : x_k = 0 for k <= -2}`
//! * `C = {x : x_k = 0 for k >= 0}`
//!
//! Elements are restricted to finitely many explicit entries followed by a
//! constant tail, which keeps every computation exact and finite.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact::{format_rational, rat, Rational};

#[derive(Clone)]
pub struct SeqElement {
    /// nonzero values at indices below `tail_start`
    entries: BTreeMap<i64, Rational>,
    tail_start: i64,
    tail_value: Rational,
}

impl SeqElement {
    /// Zero entries are dropped; every key must lie below `tail_start`.
    pub fn new(
        entries: impl IntoIterator<Item = (i64, Rational)>,
        tail_start: i64,
        tail_value: Rational,
    ) -> Result<SeqElement> {
        let mut map = BTreeMap::new();
        for (k, v) in entries {
            if k >= tail_start {
                return Err(Error::Parse(format!(
                    "explicit index {k} is not below the tail start {tail_start}"
                )));
            }
            if !v.is_zero() {
                map.insert(k, v);
            }
        }
        Ok(SeqElement {
            entries: map,
            tail_start,
            tail_value,
        })
    }

    pub fn from_ints(entries: &[(i64, i64)], tail_start: i64, tail_value: Rational) -> Result<SeqElement> {
        SeqElement::new(entries.iter().map(|&(k, v)| (k, rat(v))), tail_start, tail_value)
    }

    pub fn zero() -> SeqElement {
        SeqElement {
            entries: BTreeMap::new(),
            tail_start: 0,
            tail_value: Rational::zero(),
        }
    }

    pub fn entries(&self) -> &BTreeMap<i64, Rational> {
        &self.entries
    }

    pub fn tail_start(&self) -> i64 {
        self.tail_start
    }

    /// The limit `L`.
    pub fn tail_value(&self) -> &Rational {
        &self.tail_value
    }

    pub fn value_at(&self, k: i64) -> Rational {
        if k >= self.tail_start {
            self.tail_value.clone()
        } else {
            self.entries.get(&k).cloned().unwrap_or_else(Rational::zero)
        }
    }

    /// Smallest index that is explicit or in the tail.
    fn low(&self) -> i64 {
        self.entries
            .keys()
            .next()
            .copied()
            .map_or(self.tail_start, |k| k.min(self.tail_start))
    }

    /// Index window outside of which both sequences are zero (below) or
    /// constant (at and above the end).
    fn window(&self, other: &SeqElement) -> std::ops::Range<i64> {
        self.low().min(other.low())..self.tail_start.max(other.tail_start)
    }

    fn zip_with(&self, other: &SeqElement, f: impl Fn(&Rational, &Rational) -> Rational) -> SeqElement {
        let w = self.window(other);
        let entries = w
            .clone()
            .map(|k| (k, f(&self.value_at(k), &other.value_at(k))))
            .collect::<Vec<_>>();
        SeqElement::new(entries, w.end, f(&self.tail_value, &other.tail_value))
            .expect("window keys lie below its end")
    }

    pub fn add(&self, other: &SeqElement) -> SeqElement {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SeqElement) -> SeqElement {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> SeqElement {
        SeqElement::new(
            self.entries.iter().map(|(&k, v)| (k, v * c)),
            self.tail_start,
            &self.tail_value * c,
        )
        .expect("keys unchanged")
    }

    pub fn pointwise_max(&self, other: &SeqElement) -> SeqElement {
        self.zip_with(other, |a, b| a.max(b).clone())
    }

    /// `self <= other` pointwise.
    pub fn leq(&self, other: &SeqElement) -> bool {
        self.window(other).all(|k| self.value_at(k) <= other.value_at(k)) && self.tail_value <= other.tail_value
    }

    /// `sum_{k>=1} x_{-k} / 2^k`; finite because indices far below zero
    /// are explicit and only finitely many are nonzero.
    pub fn weighted_sum(&self) -> Rational {
        weighted_sum_from(self, 1)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty() && self.tail_value.is_zero()
    }
}

fn pow2(k: i64) -> Rational {
    Rational::from_integer(BigInt::from(2).pow(k as u32))
}

/// `sum_{k>=from} x_{-k} / 2^k`.
fn weighted_sum_from(x: &SeqElement, from: i64) -> Rational {
    let deepest = -x.low();
    (from..=deepest.max(from - 1))
        .map(|k| x.value_at(-k) / pow2(k))
        .fold(Rational::zero(), |a, b| a + b)
}

impl PartialEq for SeqElement {
    fn eq(&self, other: &SeqElement) -> bool {
        self.tail_value == other.tail_value && self.window(other).all(|k| self.value_at(k) == other.value_at(k))
    }
}

impl Eq for SeqElement {}

impl fmt::Display for SeqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|(k, v)| format!("x[{k}] = {}", format_rational(v)))
            .collect();
        let explicit = if parts.is_empty() {
            String::new()
        } else {
            format!("{}, ", parts.join(", "))
        };
        write!(
            f,
            "{{{explicit}x[k] = {} for k >= {}, 0 elsewhere}}",
            format_rational(&self.tail_value),
            self.tail_start
        )
    }
}

impl fmt::Debug for SeqElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Serialize, Deserialize)]
struct RatStr(#[serde(with = "crate::exact::rational::serde_rational")] Rational);

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct SeqJson {
    entries: BTreeMap<i64, RatStr>,
    tail_start: i64,
    tail_value: RatStr,
}

impl Serialize for SeqElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeqJson {
            entries: self.entries.iter().map(|(&k, v)| (k, RatStr(v.clone()))).collect(),
            tail_start: self.tail_start,
            tail_value: RatStr(self.tail_value.clone()),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SeqElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<SeqElement, D::Error> {
        let j = SeqJson::deserialize(d)?;
        SeqElement::new(
            j.entries.into_iter().map(|(k, v)| (k, v.0)),
            j.tail_start,
            j.tail_value.0,
        )
        .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Part {
    B,
    C,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind")]
pub enum SeqWitness {
    /// Every common upper bound in `C` has weighted sum at least `infimum`,
    /// which is positive, so none lies in the space.
    NonDirected {
        #[serde(with = "crate::exact::rational::serde_rational")]
        infimum: Rational,
    },
    /// Nothing nonzero supported at `-1` alone is a member.
    NonPervasive,
    /// Both sequences are nonzero at `index`.
    NonDisjoint { index: i64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", tag = "kind", content = "value")]
pub enum JoinOutcome {
    Some(SeqElement),
    ProvedNone(SeqWitness),
}

pub fn seq_is_member(x: &SeqElement) -> bool {
    x.weighted_sum() == x.tail_value
}

fn require_member(x: &SeqElement) -> Result<()> {
    if seq_is_member(x) {
        Ok(())
    } else {
        Err(Error::NotMember)
    }
}

pub fn seq_in_subspace(x: &SeqElement, which: Part) -> Result<bool> {
    require_member(x)?;
    Ok(match which {
        Part::B => x.entries.keys().all(|&k| k > -2) && (x.tail_start > -2 || x.tail_value.is_zero()),
        Part::C => x.tail_value.is_zero() && x.entries.keys().all(|&k| k < 0),
    })
}

/// `x = b + c` with `b` in `B`, `c` in `C`:
/// `b` keeps `x` on `k >= 0` with `b_{-1} = 2 L`, and `c` keeps `x` on
/// `k <= -2` with `c_{-1} = -2 sum_{k>=2} x_{-k} / 2^k`.
pub fn seq_decompose_bc(x: &SeqElement) -> Result<(SeqElement, SeqElement)> {
    require_member(x)?;
    let two = rat(2);
    let b_start = x.tail_start.max(0);
    let b = SeqElement::new(
        (0..b_start)
            .map(|k| (k, x.value_at(k)))
            .chain([(-1, &two * &x.tail_value)]),
        b_start,
        x.tail_value.clone(),
    )?;
    let c = SeqElement::new(
        (x.low()..=-2)
            .map(|k| (k, x.value_at(k)))
            .chain([(-1, -&two * weighted_sum_from(x, 2))]),
        0,
        Rational::zero(),
    )?;
    if !seq_in_subspace(&b, Part::B).unwrap_or(false)
        || !seq_in_subspace(&c, Part::C).unwrap_or(false)
        || b.add(&c) != *x
    {
        return Err(Error::Invariant(format!("B ⊕ C split of {x} failed verification")));
    }
    Ok((b, c))
}

/// First index where both sequences are nonzero.
fn common_index(x: &SeqElement, y: &SeqElement) -> Option<i64> {
    let w = x.window(y);
    w.clone()
        .find(|&k| !x.value_at(k).is_zero() && !y.value_at(k).is_zero())
        .or_else(|| (!x.tail_value.is_zero() && !y.tail_value.is_zero()).then_some(w.end))
}

pub fn seq_is_disjoint(x: &SeqElement, y: &SeqElement) -> Result<bool> {
    require_member(x)?;
    require_member(y)?;
    Ok(common_index(x, y).is_none())
}

/// A common upper bound of `x` and `y` inside `C`, or a proof that none
/// exists.
pub fn seq_join_in_c(x: &SeqElement, y: &SeqElement) -> Result<JoinOutcome> {
    for v in [x, y] {
        if !seq_in_subspace(v, Part::C).map_err(|_| Error::NotInC)? {
            return Err(Error::NotInC);
        }
    }
    let m = x.pointwise_max(y);
    let s = m.weighted_sum();
    if s.is_positive() {
        return Ok(JoinOutcome::ProvedNone(SeqWitness::NonDirected { infimum: s }));
    }
    let raised = m.value_at(-1) - rat(2) * &s;
    let mut entries = m.entries.clone();
    entries.insert(-1, raised);
    let c = SeqElement::new(entries, m.tail_start, m.tail_value.clone())?;
    if !seq_in_subspace(&c, Part::C).unwrap_or(false) || !x.leq(&c) || !y.leq(&c) {
        return Err(Error::Invariant(format!("upper bound {c} failed verification")));
    }
    Ok(JoinOutcome::Some(c))
}

/// Pointwise maximum of two elements of `B`, verified to lie in `B`.
pub fn seq_join_in_b(x: &SeqElement, y: &SeqElement) -> Result<SeqElement> {
    for v in [x, y] {
        if !seq_in_subspace(v, Part::B)? {
            return Err(Error::PreconditionViolated(format!("{v} is not in B")));
        }
    }
    let c = x.pointwise_max(y);
    if !seq_in_subspace(&c, Part::B).unwrap_or(false) || !x.leq(&c) || !y.leq(&c) {
        return Err(Error::Invariant(format!("pointwise max {c} is not an upper bound in B")));
    }
    Ok(c)
}

/// The element with `x_{-1} = t` and zero elsewhere has weighted sum `t/2`
/// and limit 0, so it is a member only for `t = 0`. Every positive member
/// below the positive part of `x^(1)` would have to be of this form.
pub fn seq_nonpervasive_witness() -> Result<SeqWitness> {
    let at_minus_one = |t: i64| SeqElement::from_ints(&[(-1, t)], 0, Rational::zero()).expect("valid");
    let unit = at_minus_one(1);
    if unit.weighted_sum() != crate::exact::ratio(1, 2) || seq_is_member(&unit) {
        return Err(Error::Invariant("x_{-1} = 1 alone must have weighted sum 1/2".into()));
    }
    if !seq_is_member(&at_minus_one(0)) || seq_is_member(&at_minus_one(-3)) {
        return Err(Error::Invariant("membership of multiples of e_{-1} is not t = 0 only".into()));
    }
    let positive_part = x_n(1).pointwise_max(&SeqElement::zero());
    if positive_part.entries.keys().ne([-1].iter()) || !positive_part.tail_value.is_zero() {
        return Err(Error::Invariant("positive part of x^(1) is not supported at -1".into()));
    }
    Ok(SeqWitness::NonPervasive)
}

/// `x^(1)` in `C` and the element `b` of `B` meet at index -1.
pub fn seq_b_complement_witness() -> Result<SeqWitness> {
    let b = b_element();
    let x1 = x_n(1);
    if !seq_in_subspace(&b, Part::B)? || !seq_in_subspace(&x1, Part::C)? {
        return Err(Error::Invariant("witness sequences are not in B and C".into()));
    }
    match common_index(&b, &x1) {
        Some(index) => Ok(SeqWitness::NonDisjoint { index }),
        None => Err(Error::Invariant("b and x^(1) are disjoint".into())),
    }
}

/// `x^(n)`: 1 at `-n`, -2 at `-(n+1)`, zero elsewhere.
pub fn x_n(n: i64) -> SeqElement {
    SeqElement::from_ints(&[(-n, 1), (-(n + 1), -2)], 0, Rational::zero()).expect("valid")
}

/// `z^(n)`: 1 at `n`, zero elsewhere, for `n >= 0`.
pub fn z_n(n: i64) -> SeqElement {
    SeqElement::from_ints(&[(n, 1)], n + 1, Rational::zero()).expect("valid")
}

/// `b_k = 1/2` for `k >= 0`, `b_{-1} = 1`, zero below.
pub fn b_element() -> SeqElement {
    SeqElement::from_ints(&[(-1, 1)], 0, crate::exact::ratio(1, 2)).expect("valid")
}
