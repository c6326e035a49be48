//! Closed-form multiplicity values.

/// Three-colour Ramsey number of the triangle.
pub const RAMSEY_3_K3: u64 = 17;

/// Least number of monochromatic triangles in a 3-colouring of `K_17`.
pub const M3_K3_17: u64 = 5;

/// Goodman's minimum number of monochromatic triangles over 2-colourings of
/// `K_n`.
pub fn goodman(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        n * n.saturating_sub(2) * n.saturating_sub(4) / 24
    } else if n % 4 == 1 {
        n * n.saturating_sub(1) * n.saturating_sub(5) / 24
    } else {
        (n + 1) * n.saturating_sub(3) * n.saturating_sub(4) / 24
    }
}

/// `r·C(m+1,3) + (5-r)·C(m,3)` for `n = 5m + r`: the monochromatic triangle
/// count of `G_ex(n)`. It equals the 3-colour minimum only for large `n`; at
/// `n = 17` it gives 11 against the true value [`M3_K3_17`].
pub fn corollary_value(n: u64) -> u64 {
    let (m, r) = (n / 5, n % 5);
    r * choose3(m + 1) + (5 - r) * choose3(m)
}

fn choose3(m: u64) -> u64 {
    if m < 3 {
        0
    } else {
        m * (m - 1) * (m - 2) / 6
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn goodman_values() {
        assert_eq!(goodman(5), 0);
        assert_eq!(goodman(6), 2);
        assert_eq!(goodman(7), 4);
        assert_eq!(goodman(3), 0);
        assert_eq!(goodman(4), 0);
        assert_eq!(goodman(1), 0);
        assert_eq!(goodman(2), 0);
    }

    #[test]
    fn corollary_values() {
        assert_eq!(corollary_value(11), 1);
        assert_eq!(corollary_value(20), 20);
        assert_eq!(corollary_value(17), 11);
        assert_eq!(corollary_value(5), 0);
        assert!(corollary_value(17) > M3_K3_17);
    }
}
