//! Serde adapters writing `BigInt` as a decimal string, for
//! `#[serde(with = "...")]` fields.

use num_bigint::BigInt;
use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(x)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let s = String::deserialize(d)?;
    s.parse().map_err(D::Error::custom)
}

pub mod option {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
        match x {
            Some(x) => s.collect_str(x),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigInt>, D::Error> {
        Option::<String>::deserialize(d)?
            .map(|s| s.parse().map_err(D::Error::custom))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use serde::{Deserialize, Serialize};

    use super::*;

    #[derive(Serialize, Deserialize, PartialEq, Debug)]
    struct Holder {
        #[serde(with = "super")]
        n: BigInt,
        #[serde(with = "super::option")]
        m: Option<BigInt>,
    }

    #[test]
    fn round_trips() {
        let h = Holder {
            n: "-123456789012345678901234567890".parse().unwrap(),
            m: None,
        };
        let s = serde_json::to_string(&h).unwrap();
        assert_eq!(s, r#"{"n":"-123456789012345678901234567890","m":null}"#);
        assert_eq!(serde_json::from_str::<Holder>(&s).unwrap(), h);
    }
}
