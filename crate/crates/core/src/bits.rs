//! Parsing and rendering of binary words written as `"0110"`.

use crate::error::{Error, Result};

pub fn parse(s: &str) -> Result<Vec<bool>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(false),
            '1' => Ok(true),
            other => Err(Error::invalid(format!("bad bit {other:?} in word {s:?}"))),
        })
        .collect()
}

pub fn render(word: &[bool]) -> String {
    word.iter().map(|&b| if b { '1' } else { '0' }).collect()
}

/// Serde adapter storing a word as a bit string.
pub mod serde_word {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(word: &[bool], s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::render(word))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<bool>, D::Error> {
        super::parse(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of bit-string words.
pub mod serde_words {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(words: &[Vec<bool>], s: S) -> Result<S::Ok, S::Error> {
        words.iter().map(|w| super::render(w)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<bool>>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|w| super::parse(w).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        assert_eq!(render(&parse("01101").unwrap()), "01101");
        assert_eq!(parse("").unwrap(), Vec::<bool>::new());
        assert!(parse("012").is_err());
    }
}
