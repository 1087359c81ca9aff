//! Published reference figures used for comparison tables.
//!
//! The zigzag-decodable baselines come from matrices this crate does not
//! construct (heuristic designs for small `K`, Hankel-based designs for
//! `K >= 5`), so they are carried here as data only.

use crate::codes::Metrics;
use crate::gf2poly::Poly2;

/// Block length of the comparison table.
pub const TABLE_N: usize = 7;

/// Modulus of the comparison table, `z^3+z+1`.
pub fn table_modulus() -> Poly2 {
    Poly2::from_mask(0xB)
}

/// Smallest known maximum overhead of a zigzag-decodable code with `N = 2K`.
pub fn zd_max_overhead(k: usize) -> Option<usize> {
    match k {
        0 | 1 => None,
        2 | 3 => Some(1),
        4 => Some(3),
        _ => Some(k * (k - 1) / 2),
    }
}

/// Zigzag-decodable code metrics at `N = 7`, `K = 2..=6`.
pub fn zd_metrics(k: usize) -> Option<Metrics> {
    const L_SUM: [usize; 5] = [8, 8, 7, 6, 3];
    const ALPHA: [usize; 5] = [5, 8, 9, 8, 5];
    (2..=6).contains(&k).then(|| Metrics {
        l_max: 3,
        l_sum: L_SUM[k - 2],
        alpha: ALPHA[k - 2],
    })
}

/// Published SXOR metrics at `N = 7`, `g = z^3+z+1`, `K = 2..=6`.
///
/// The `K = 3` total overhead is listed as 11; the column degrees of the
/// constructed matrix give 12.
pub fn sxor_metrics(k: usize) -> Option<Metrics> {
    const L_SUM: [usize; 5] = [10, 11, 12, 12, 12];
    (2..=6).contains(&k).then(|| Metrics {
        l_max: 2,
        l_sum: L_SUM[k - 2],
        alpha: 12 * (k - 1),
    })
}

/// Published systematic SXOR metrics (best class) at `N = 7`, `g = z^3+z+1`.
pub fn systematic_metrics(k: usize) -> Option<Metrics> {
    const L_SUM: [usize; 5] = [8, 6, 6, 3, 2];
    const ALPHA: [usize; 5] = [12, 14, 12, 12, 10];
    (2..=6).contains(&k).then(|| Metrics {
        l_max: 2,
        l_sum: L_SUM[k - 2],
        alpha: ALPHA[k - 2],
    })
}
