//! Small internal helpers: unordered-pair indexing and seed derivation.

/// Decodes linear index `t` into the `t`-th unordered pair `(i, j)`, `i < j`,
/// of `0..n`, ordered lexicographically. `t` must be below n(n−1)/2.
///
/// Row `i` holds the `n−1−i` pairs `(i, i+1) .. (i, n−1)`; the number of
/// pairs before row `i` is `C(i) = i·(2n−1−i)/2`. The row is located with a
/// float estimate and corrected exactly in integers.
pub(crate) fn pair_from_linear(t: u64, n: u64) -> (u64, u64) {
    debug_assert!(n >= 2 && t < n * (n - 1) / 2);
    let before = |i: u64| -> u64 { i * (2 * n - 1 - i) / 2 };
    // Solve i(2n−1−i)/2 ≈ t for i.
    let nf = n as f64 - 0.5;
    let est = nf - (nf * nf - 2.0 * t as f64).max(0.0).sqrt();
    let mut i = (est as i64).clamp(0, n as i64 - 2) as u64;
    while before(i) > t {
        i -= 1;
    }
    while i < n - 2 && before(i + 1) <= t {
        i += 1;
    }
    let j = i + 1 + (t - before(i));
    (i, j)
}

/// FNV-1a hash, used to derive per-partition sub-seeds from a base seed.
pub(crate) fn fnv1a64(bytes: &[u8]) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}
