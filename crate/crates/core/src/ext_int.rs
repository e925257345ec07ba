//! Integers extended by a single point at infinity.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A value of `Z ∪ {∞}`. Every finite value compares below `Infinity`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtInt {
    Fin(i64),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
#[error("extended integer overflow")]
pub struct Overflow;

impl ExtInt {
    pub fn is_finite(self) -> bool {
        matches!(self, ExtInt::Fin(_))
    }

    pub fn finite(self) -> Option<i64> {
        match self {
            ExtInt::Fin(v) => Some(v),
            ExtInt::Infinity => None,
        }
    }

    /// Adds a finite integer. Infinity absorbs; finite overflow is reported.
    pub fn checked_add(self, rhs: i64) -> Result<ExtInt, Overflow> {
        match self {
            ExtInt::Fin(v) => v.checked_add(rhs).map(ExtInt::Fin).ok_or(Overflow),
            ExtInt::Infinity => Ok(ExtInt::Infinity),
        }
    }

    /// Sum of two extended integers; `∞ + x = ∞`.
    pub fn checked_add_ext(self, rhs: ExtInt) -> Result<ExtInt, Overflow> {
        match rhs {
            ExtInt::Fin(v) => self.checked_add(v),
            ExtInt::Infinity => Ok(ExtInt::Infinity),
        }
    }

    /// Difference with a finite value; `∞ - x = ∞`.
    pub fn checked_sub(self, rhs: i64) -> Result<ExtInt, Overflow> {
        match self {
            ExtInt::Fin(v) => v.checked_sub(rhs).map(ExtInt::Fin).ok_or(Overflow),
            ExtInt::Infinity => Ok(ExtInt::Infinity),
        }
    }
}

impl From<i64> for ExtInt {
    fn from(v: i64) -> Self {
        ExtInt::Fin(v)
    }
}

impl PartialOrd for ExtInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtInt {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtInt::Fin(a), ExtInt::Fin(b)) => a.cmp(b),
            (ExtInt::Fin(_), ExtInt::Infinity) => Ordering::Less,
            (ExtInt::Infinity, ExtInt::Fin(_)) => Ordering::Greater,
            (ExtInt::Infinity, ExtInt::Infinity) => Ordering::Equal,
        }
    }
}

impl fmt::Display for ExtInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtInt::Fin(v) => write!(f, "{v}"),
            ExtInt::Infinity => f.write_str("inf"),
        }
    }
}

// JSON form: a plain integer, or the string "inf".
impl Serialize for ExtInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtInt::Fin(v) => s.serialize_i64(*v),
            ExtInt::Infinity => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = ExtInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an integer or \"inf\"")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtInt, E> {
                Ok(ExtInt::Fin(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtInt, E> {
                i64::try_from(v).map(ExtInt::Fin).map_err(|_| E::custom("integer out of range"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtInt, E> {
                if v == "inf" {
                    Ok(ExtInt::Infinity)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }
        }
        d.deserialize_any(V)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn infinity_is_top() {
        assert!(ExtInt::Fin(i64::MAX) < ExtInt::Infinity);
        assert!(ExtInt::Fin(-3) < ExtInt::Fin(2));
        assert_eq!(ExtInt::Infinity.max(ExtInt::Fin(7)), ExtInt::Infinity);
    }

    #[test]
    fn infinity_absorbs() {
        assert_eq!(ExtInt::Infinity.checked_add(-40), Ok(ExtInt::Infinity));
        assert_eq!(ExtInt::Fin(3).checked_add_ext(ExtInt::Infinity), Ok(ExtInt::Infinity));
    }

    #[test]
    fn overflow_is_reported() {
        assert_eq!(ExtInt::Fin(i64::MAX).checked_add(1), Err(Overflow));
        assert_eq!(ExtInt::Fin(i64::MIN).checked_sub(1), Err(Overflow));
    }

    #[test]
    fn json_form() {
        let v = vec![ExtInt::Fin(-2), ExtInt::Infinity];
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"[-2,"inf"]"#);
        let back: Vec<ExtInt> = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
        assert!(serde_json::from_str::<ExtInt>(r#""nan""#).is_err());
    }

    proptest! {
        #[test]
        fn finite_addition_is_exact(a in -1_000_000i64..1_000_000, b in -1_000_000i64..1_000_000) {
            prop_assert_eq!(ExtInt::Fin(a).checked_add(b), Ok(ExtInt::Fin(a + b)));
        }

        #[test]
        fn order_matches_integers(a in any::<i64>(), b in any::<i64>()) {
            prop_assert_eq!(ExtInt::Fin(a).cmp(&ExtInt::Fin(b)), a.cmp(&b));
        }
    }
}
