//! The JSON series document:
//!
//! ```json
//! {"k": 2, "degree": 3, "kind": "moments", "coefficients": {"1,2": "-3/4"}}
//! ```
//!
//! Word keys are comma-separated 1-based letters; values are lowest-terms
//! rationals `p/q` with `q > 0`, or bare integers (a JSON integer is also
//! accepted on input). Serialization is canonical: fields in a fixed order,
//! coefficient keys sorted by degree then lexicographically, rationals in
//! lowest terms, no zero coefficients. Re-serializing a parsed document is
//! a fixpoint. Unknown fields and duplicate word keys are rejected.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::de::{self, Deserialize, Deserializer, MapAccess, Visitor};
use serde::ser::{Serialize, SerializeMap, Serializer};

use super::{NCSeries, SeriesKind, Word};

/// A series together with the transform space it lives in.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesDoc {
    pub kind: SeriesKind,
    pub series: NCSeries,
}

impl SeriesDoc {
    pub fn new(kind: SeriesKind, series: NCSeries) -> SeriesDoc {
        SeriesDoc { kind, series }
    }

    /// Canonical JSON text (compact, deterministic key order).
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("series documents serialize infallibly")
    }

    pub fn from_json(text: &str) -> serde_json::Result<SeriesDoc> {
        serde_json::from_str(text)
    }
}

/// Formats a rational canonically: `p/q` in lowest terms with `q > 0`, or a
/// bare integer when the denominator is one.
pub fn format_rational(value: &BigRational) -> String {
    value.to_string()
}

/// Parses `-?digits` or `-?digits/digits` with a nonzero denominator; the
/// result is reduced to lowest terms.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    fn parse_int(part: &str) -> Option<BigInt> {
        let digits = part.strip_prefix('-').unwrap_or(part);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        part.parse().ok()
    }
    let (numer, denom) = match text.split_once('/') {
        Some((n, d)) => (parse_int(n)?, parse_int(d)?),
        None => (parse_int(text)?, BigInt::from(1)),
    };
    if denom.is_zero() {
        return None;
    }
    Some(BigRational::new(numer, denom))
}

fn parse_word_key(key: &str) -> Option<Word> {
    let mut letters = Vec::new();
    for part in key.split(',') {
        if part.is_empty() || !part.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let letter: u8 = part.parse().ok()?;
        if letter == 0 {
            return None;
        }
        letters.push(letter);
    }
    Word::new(letters).ok()
}

impl Serialize for SeriesDoc {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        struct Coefficients<'a>(&'a NCSeries);
        impl Serialize for Coefficients<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.terms().count()))?;
                for (w, c) in self.0.terms() {
                    map.serialize_entry(&w.to_string(), &format_rational(c))?;
                }
                map.end()
            }
        }

        let mut map = serializer.serialize_map(Some(4))?;
        map.serialize_entry("k", &self.series.k())?;
        map.serialize_entry("degree", &self.series.degree())?;
        map.serialize_entry("kind", self.kind.as_str())?;
        map.serialize_entry("coefficients", &Coefficients(&self.series))?;
        map.end()
    }
}

struct RationalValue(BigRational);

impl<'de> Deserialize<'de> for RationalValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalValue;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational string \"p/q\" or an integer")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Self::Value, E> {
                parse_rational(v)
                    .map(RationalValue)
                    .ok_or_else(|| E::custom(format!("invalid rational {v:?}")))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Self::Value, E> {
                Ok(RationalValue(BigRational::from(BigInt::from(v))))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Self::Value, E> {
                Ok(RationalValue(BigRational::from(BigInt::from(v))))
            }
        }
        deserializer.deserialize_any(V)
    }
}

struct CoefficientMap(BTreeMap<Word, BigRational>);

impl<'de> Deserialize<'de> for CoefficientMap {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = CoefficientMap;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a map from word keys to rationals")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut out = BTreeMap::new();
                while let Some((key, RationalValue(value))) =
                    access.next_entry::<String, RationalValue>()?
                {
                    let word = parse_word_key(&key)
                        .ok_or_else(|| de::Error::custom(format!("invalid word key {key:?}")))?;
                    if out.insert(word, value).is_some() {
                        return Err(de::Error::custom(format!("duplicate word key {key:?}")));
                    }
                }
                Ok(CoefficientMap(out))
            }
        }
        deserializer.deserialize_map(V)
    }
}

impl<'de> Deserialize<'de> for SeriesDoc {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = SeriesDoc;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a series document object")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
                let mut k: Option<usize> = None;
                let mut degree: Option<usize> = None;
                let mut kind: Option<SeriesKind> = None;
                let mut coefficients: Option<CoefficientMap> = None;
                while let Some(field) = access.next_key::<String>()? {
                    match field.as_str() {
                        "k" => {
                            if k.replace(access.next_value()?).is_some() {
                                return Err(de::Error::duplicate_field("k"));
                            }
                        }
                        "degree" => {
                            if degree.replace(access.next_value()?).is_some() {
                                return Err(de::Error::duplicate_field("degree"));
                            }
                        }
                        "kind" => {
                            let raw: String = access.next_value()?;
                            let parsed = SeriesKind::parse(&raw).ok_or_else(|| {
                                de::Error::custom(format!(
                                    "unknown kind {raw:?} (expected moments, r_transform or eta)"
                                ))
                            })?;
                            if kind.replace(parsed).is_some() {
                                return Err(de::Error::duplicate_field("kind"));
                            }
                        }
                        "coefficients" => {
                            if coefficients.replace(access.next_value()?).is_some() {
                                return Err(de::Error::duplicate_field("coefficients"));
                            }
                        }
                        other => {
                            return Err(de::Error::unknown_field(
                                other,
                                &["k", "degree", "kind", "coefficients"],
                            ))
                        }
                    }
                }
                let k = k.ok_or_else(|| de::Error::missing_field("k"))?;
                let degree = degree.ok_or_else(|| de::Error::missing_field("degree"))?;
                let kind = kind.ok_or_else(|| de::Error::missing_field("kind"))?;
                let coefficients =
                    coefficients.ok_or_else(|| de::Error::missing_field("coefficients"))?;

                let mut series =
                    NCSeries::zero(k, degree).map_err(|e| de::Error::custom(e.to_string()))?;
                for (word, value) in coefficients.0 {
                    series
                        .set_coefficient(word, value)
                        .map_err(|e| de::Error::custom(e.to_string()))?;
                }
                Ok(SeriesDoc { kind, series })
            }
        }
        deserializer.deserialize_map(V)
    }
}
