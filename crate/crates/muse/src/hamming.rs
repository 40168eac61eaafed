use substrate::hash::Hash256;

/// Fraction of differing bits between two digests: popcount(xor)/256.
pub fn hamming_fraction(h1: &Hash256, h2: &Hash256) -> f64 {
    let bits: u32 = h1.0.iter().zip(h2.0.iter()).map(|(a, b)| (a ^ b).count_ones()).sum();
    bits as f64 / 256.0
}
