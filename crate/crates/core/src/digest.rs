//! Stable FNV-1a digests for configs and derived seeds.

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

/// 64-bit FNV-1a hash of a byte string.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut hash = FNV_OFFSET;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

/// Hex rendering of [`fnv1a64`], used as a config digest in result rows.
pub fn digest_str(canonical: &str) -> String {
    format!("{:016x}", fnv1a64(canonical.as_bytes()))
}

/// Derives a child seed from a master seed and a context label, so that
/// independent corpus items get independent, reproducible RNG streams.
pub fn derive_seed(master: u64, context: &str) -> u64 {
    fnv1a64(format!("{master}:{context}").as_bytes())
}
