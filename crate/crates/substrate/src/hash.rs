use std::fmt;

use serde::{de, Deserialize, Deserializer, Serialize, Serializer};
use sha2::{Digest, Sha256};

/// A 256-bit digest, big-endian byte order. Serializes as 64 lowercase hex chars.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Hash256(pub [u8; 32]);

impl Hash256 {
    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(64);
        for b in self.0 {
            s.push(char::from_digit((b >> 4) as u32, 16).unwrap());
            s.push(char::from_digit((b & 0xf) as u32, 16).unwrap());
        }
        s
    }

    pub fn from_hex(s: &str) -> Result<Self, ParseHashError> {
        if s.len() != 64 {
            return Err(ParseHashError::Length(s.len()));
        }
        let mut out = [0u8; 32];
        for (i, chunk) in s.as_bytes().chunks(2).enumerate() {
            let hi = (chunk[0] as char).to_digit(16).ok_or(ParseHashError::Digit(2 * i))?;
            let lo = (chunk[1] as char).to_digit(16).ok_or(ParseHashError::Digit(2 * i + 1))?;
            out[i] = ((hi << 4) | lo) as u8;
        }
        Ok(Hash256(out))
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ParseHashError {
    #[error("hash hex must be 64 chars, got {0}")]
    Length(usize),
    #[error("non-hex character at offset {0}")]
    Digit(usize),
}

impl fmt::Debug for Hash256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hash256({})", self.to_hex())
    }
}

impl fmt::Display for Hash256 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for Hash256 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Hash256 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Hash256::from_hex(&s).map_err(de::Error::custom)
    }
}

/// FIPS 180-4 digest of an arbitrary message.
pub fn sha256_digest(message: &[u8]) -> Hash256 {
    let out = Sha256::digest(message);
    Hash256(out.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bit_difference(a: &Hash256, b: &Hash256) -> f64 {
        let bits: u32 = a.0.iter().zip(b.0.iter()).map(|(x, y)| (x ^ y).count_ones()).sum();
        bits as f64 / 256.0
    }

    #[test]
    fn empty_message_matches_published_vector() {
        let d = sha256_digest(b"");
        assert_eq!(
            d.to_hex(),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn abc_matches_published_vector() {
        let d = sha256_digest(b"abc");
        assert_eq!(
            d.to_hex(),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn two_block_message_matches_published_vector() {
        let d = sha256_digest(b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq");
        assert_eq!(
            d.to_hex(),
            "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1"
        );
    }

    #[test]
    fn digest_is_deterministic() {
        assert_eq!(sha256_digest(b"chimera"), sha256_digest(b"chimera"));
    }

    #[test]
    fn hex_round_trip() {
        let d = sha256_digest(b"round trip");
        assert_eq!(Hash256::from_hex(&d.to_hex()).unwrap(), d);
        assert_eq!(Hash256::from_hex("zz").unwrap_err(), ParseHashError::Length(2));
        let mut bad = d.to_hex();
        bad.replace_range(10..11, "g");
        assert_eq!(Hash256::from_hex(&bad).unwrap_err(), ParseHashError::Digit(10));
    }

    #[test]
    fn bit_difference_of_identical_is_zero() {
        let d = sha256_digest(b"x");
        assert_eq!(bit_difference(&d, &d), 0.0);
    }

    #[test]
    fn bit_difference_of_complement_is_one() {
        let d = sha256_digest(b"x");
        let mut inv = d.0;
        for b in &mut inv {
            *b = !*b;
        }
        assert_eq!(bit_difference(&d, &Hash256(inv)), 1.0);
    }
}
